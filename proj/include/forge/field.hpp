#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "forge/bigint.hpp"
#include "forge/budget.hpp"
#include "forge/ring.hpp"

namespace forge {

/// Element of F_{p^r}, stored as its base-p digits packed into one integer
/// (digit i is the coefficient of t^i). The packing is the canonical form.
struct FieldElem {
  std::uint32_t packed = 0;
  friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

/// A finite field F_p[t]/(modulus). Prime fields have r = 1 and modulus t.
///
/// Values are immutable and cheap to copy; lookup tables are shared.
class FieldSpec {
 public:
  using value_type = FieldElem;

  /// F_2.
  FieldSpec();

  /// F_{p^r} with the smallest monic irreducible modulus, comparing
  /// coefficient vectors from t^{r-1} down to t^0.
  static FieldSpec make(std::uint32_t p, std::uint32_t r,
                        std::uint64_t max_size = Budget::global().max_field_size);

  /// Explicit modulus (low degree first, monic). Checks irreducibility.
  static FieldSpec with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return r_; }
  std::uint64_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool is_prime_field() const { return r_ == 1; }

  FieldElem zero() const { return {}; }
  FieldElem one() const { return {1}; }
  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  /// Multiplication by polynomial product and reduction, without tables.
  FieldElem mul_reference(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  bool is_zero(FieldElem a) const { return a.packed == 0; }

  /// a scaled by the prime-subfield element c (0 <= c < p).
  FieldElem scale(FieldElem a, std::uint32_t c) const;

  FieldElem from_int(std::int64_t v) const;
  FieldElem from_bigint(const BigInt& v) const;
  FieldElem from_constant(const Constant& c) const;
  Constant to_constant(FieldElem a) const;

  FieldElem element(std::span<const std::uint32_t> digits) const;
  /// k-th element in canonical order, k in [0, q).
  FieldElem element_at(std::uint64_t k) const;
  std::vector<std::uint32_t> coords(FieldElem a) const;
  /// Phi_i(a): the i-th polynomial-basis coordinate, i in [1, r].
  std::uint32_t project(FieldElem a, std::uint32_t i) const;

  /// Throws CarrierMismatch unless a is a canonical element of this field.
  void check(FieldElem a) const;

  std::string name() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && a.modulus_ == b.modulus_;
  }

 private:
  struct Tables;

  FieldSpec(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t p_ = 2;
  std::uint32_t r_ = 1;
  std::uint64_t q_ = 2;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> place_;  // p^i
  std::shared_ptr<const Tables> tables_;
};

bool is_prime(std::uint64_t n);

/// Irreducibility of a monic polynomial over F_p by exhaustive search for a
/// monic factor of degree <= deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

}  // namespace forge
