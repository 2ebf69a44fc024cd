#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "forge/bigint.hpp"
#include "forge/coeff_vector.hpp"
#include "forge/hitting.hpp"
#include "forge/parallel.hpp"

namespace forge {

/// Rows (a, i) at a * r + (i - 1) with entries Phi_i(m(a)) in [0, p).
struct EvalMatrixFF {
  std::uint32_t p = 2;
  std::size_t cols = 0;
  std::vector<std::vector<std::uint32_t>> rows;
};

/// One row per point a with entries m(a).
struct EvalMatrixInt {
  std::size_t cols = 0;
  std::vector<std::vector<BigInt>> rows;
};

EvalMatrixFF eval_matrix_ff(const HittingSet& hs);
EvalMatrixInt eval_matrix_int(const HittingSet& hs);

struct KernelBasis {
  std::uint32_t p = 2;
  std::size_t cols = 0;
  std::size_t rank = 0;
  std::vector<std::vector<std::uint32_t>> basis;
};

/// Nullspace by Gaussian elimination over F_p; one basis vector per free column.
KernelBasis kernel_basis_ff(const EvalMatrixFF& m);

/// Uniformly random nonzero F_p-combination of the basis. Throws
/// InvalidArgument when the basis is empty.
std::vector<std::uint32_t> sample_kernel(const KernelBasis& kb, std::uint64_t seed);

FieldVector field_vector(const MonomialOrder& order, const std::vector<std::uint32_t>& dense);
IntVector int_vector(const MonomialOrder& order, const std::vector<int>& dense);

/// (<z, eval(a)>)_{a in H}.
std::vector<BigInt> gamma_map(const IntVector& z, const EvalMatrixInt& m);

struct SiegelResult {
  /// Nonzero h in {-1, 0, 1}^N with Gamma(h) = 0; first nonzero entry is +1.
  std::optional<std::vector<int>> h;
  /// 2^N > (2M + 1)^|H|.
  bool pigeonhole = false;
  /// Columns searched (a prefix of [N]; the rest of h is 0).
  std::size_t prefix = 0;
  /// 2^prefix > (M' + 1)^|H| with M' the largest row sum over the prefix.
  bool pigeonhole_prefix = false;
  std::uint64_t table_size = 0;
};

/// Meet-in-the-middle search over {-1, 0, 1}^prefix: Gamma-images of the
/// low half go into a table, the high half looks up the negated image.
SiegelResult siegel_search(const EvalMatrixInt& m, const BigInt& M, Parallelism par = {},
                           std::uint64_t table_budget = Budget::global().max_siegel_table);

}  // namespace forge
