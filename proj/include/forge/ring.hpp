#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "forge/bigint.hpp"

namespace forge {

/// Coordinates of an extension-field constant in the polynomial basis, low degree first.
struct FieldDigits {
  std::vector<std::uint32_t> digits;
  friend bool operator==(const FieldDigits&, const FieldDigits&) = default;
};

/// A circuit constant: an integer (embedded through Z -> carrier) or an
/// explicit field element.
using Constant = std::variant<BigInt, FieldDigits>;

bool constants_equal(const Constant& a, const Constant& b);
std::string describe(const Constant& c);

/// Exact commutative ring used as a carrier by every templated algorithm.
template <class R>
concept Ring = requires(const R& ring, const typename R::value_type& a, const Constant& c) {
  typename R::value_type;
  { ring.zero() } -> std::convertible_to<typename R::value_type>;
  { ring.one() } -> std::convertible_to<typename R::value_type>;
  { ring.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { ring.sub(a, a) } -> std::convertible_to<typename R::value_type>;
  { ring.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { ring.neg(a) } -> std::convertible_to<typename R::value_type>;
  { ring.is_zero(a) } -> std::convertible_to<bool>;
  { ring.from_constant(c) } -> std::convertible_to<typename R::value_type>;
  { ring.to_constant(a) } -> std::convertible_to<Constant>;
  { ring.from_int(std::int64_t{}) } -> std::convertible_to<typename R::value_type>;
};

/// The integers, with GMP-backed values.
struct IntegerRing {
  using value_type = BigInt;

  BigInt zero() const { return 0; }
  BigInt one() const { return 1; }
  BigInt add(const BigInt& a, const BigInt& b) const { return a + b; }
  BigInt sub(const BigInt& a, const BigInt& b) const { return a - b; }
  BigInt mul(const BigInt& a, const BigInt& b) const { return a * b; }
  BigInt neg(const BigInt& a) const { return -a; }
  bool is_zero(const BigInt& a) const { return sgn(a) == 0; }
  BigInt from_int(std::int64_t v) const { return BigInt(std::to_string(v)); }
  BigInt from_bigint(const BigInt& v) const { return v; }
  BigInt from_constant(const Constant& c) const;
  Constant to_constant(const BigInt& a) const { return a; }
  std::string name() const { return "Z"; }
  friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

}  // namespace forge
