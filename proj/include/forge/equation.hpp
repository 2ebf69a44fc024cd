#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "forge/circuit.hpp"
#include "forge/coeff_vector.hpp"
#include "forge/field.hpp"
#include "forge/hitting.hpp"

namespace forge {

/// OR(z) = 1 - prod_m (1 - z_m^(p-1)) over F_p: 0 iff z = 0.
FieldElem or_gadget_ff(const FieldSpec& F, const FieldVector& z);
/// OR(z) = 1 - prod_m (1 - z_m) for z in {-1, 0, 1}^N. Throws InvalidArgument otherwise.
BigInt or_gadget_int(const IntVector& z);

/// P_N(z) = OR(z) * prod_{a in H} prod_{i=1..r} (1 - <z, eval(a)^(i)>^(p-1)),
/// where eval(a)^(i)_m = Phi_i(m(a)).
struct EquationFF {
  FieldSpec F;
  FieldSpec K;
  HittingSet hs;
  MonomialOrder order;
  /// Row (a, i) at index a * r + (i - 1); entries in [0, p).
  std::vector<std::vector<std::uint32_t>> rows;

  std::size_t factor_count() const { return rows.size(); }
  /// p * (N + |H| r).
  std::uint64_t degree_bound() const;
  /// (p - 1) * (N + |H| r), the syntactic degree of the construction.
  std::uint64_t formal_degree() const;
};

EquationFF build_equation_ff(const HittingSet& hs);

struct FFVerdict {
  FieldElem value;
  /// "or": z = 0; "factor": factor (point, coord) vanishes; "none": value 1.
  std::string reason;
  std::size_t point = 0;
  std::uint32_t coord = 0;
};

FFVerdict eval_equation_ff(const EquationFF& eq, const FieldVector& z);
Circuit compile_equation_ff(const EquationFF& eq);

/// ẽval_r(a)_m = m(a) mod r.
std::vector<std::uint32_t> proxy_eval(std::span<const std::uint64_t> a, std::uint64_t r, const MonomialOrder& order);

/// Q_r(x) = prod_{i in [-R, R], i mod r != 0} (x - i).
BigInt qr_eval(std::uint64_t r, const BigInt& x, std::uint64_t R);

/// Number of i in [-R, R] with i mod r != 0.
std::uint64_t qr_degree(std::uint64_t r, std::uint64_t R);

/// ell = ceil(log2(M + 1)).
std::uint64_t value_bits(const BigInt& M);

/// Least r in [2, ell^2] with value mod r != 0. Requires 0 < |value| <= M.
std::uint64_t crt_witness(const BigInt& value, const BigInt& M);

/// P_N(z) = OR(z) * prod_{a in H} prod_{r=2..ell^2} Q_r(<z, ẽval_r(a)>),
/// with M = N B^d, ell = ceil(log2(M+1)), R = N ell^2.
struct EquationInt {
  HittingSet hs;
  MonomialOrder order;
  std::uint64_t B = 0;
  BigInt M;
  std::uint64_t ell = 0;
  std::uint64_t R = 0;
  /// values[a][m] = m(a).
  std::vector<std::vector<BigInt>> values;
  /// proxies[a][r - 2][m] = m(a) mod r.
  std::vector<std::vector<std::vector<std::uint32_t>>> proxies;

  std::uint64_t r_max() const { return ell * ell; }
  std::size_t factor_count() const { return hs.points.size() * (r_max() - 1); }
  /// N + |H| * sum_r deg Q_r, the syntactic degree of the construction.
  std::uint64_t formal_degree() const;
  /// N * (1 + |H| * sum_r deg Q_r).
  std::uint64_t coarse_degree_bound() const;
  /// Linear factors (x - i) over all Q_r and all points.
  std::uint64_t linear_factor_count() const;
};

EquationInt build_equation_int(const HittingSet& hs);

struct IntVerdict {
  bool zero = false;
  /// "or", "factor" or "none".
  std::string reason;
  std::size_t point = 0;
  std::uint64_t r = 0;
  std::int64_t inner = 0;
};

/// Short-circuit case analysis; z must be {-1, 0, 1}-valued.
IntVerdict eval_equation_int_verdict(const EquationInt& eq, const IntVector& z);
/// Literal value of P_N(z), every factor multiplied out.
BigInt eval_equation_int_exact(const EquationInt& eq, const IntVector& z);
Circuit compile_equation_int(const EquationInt& eq);

}  // namespace forge
