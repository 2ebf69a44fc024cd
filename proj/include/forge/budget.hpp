#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace forge {

/// Desk-scale guard rails. Every enumeration, expansion and dense structure
/// checks its projected size against one of these before doing work.
struct Budget {
  std::uint64_t max_field_size = 1u << 20;       // q = p^r
  std::uint64_t max_circuits = 10'000'000;       // enumeration candidates
  std::uint64_t max_terms = 1'000'000;           // sparse polynomial terms
  std::uint64_t max_matrix_columns = 10'000;     // dense eval matrices (N)
  std::uint64_t max_sum_vars = 16;               // m in 2^m brute-force sums
  std::uint64_t max_grid_points = 1u << 20;      // explicit hitting-set grids
  std::uint64_t max_siegel_table = 1'594'323;    // 3^13 meet-in-the-middle entries
  std::uint64_t max_gates = 4'000'000;           // compiled / universal circuits
  std::uint64_t max_factors = 1'000'000;         // equation factor count
  std::uint64_t max_exact_bits = 1ull << 27;     // exact P_N evaluation size

  /// Parses "key=value,key=value" (keys are the field names without the
  /// `max_` prefix). Throws InvalidArgument on unknown keys.
  static Budget parse(std::string_view spec);

  /// Defaults overridden by the FORGE_BUDGET environment variable.
  static Budget from_env();

  /// Process-wide budget, initialised from the environment on first use.
  static const Budget& global();
};

void require_budget(std::uint64_t needed, std::uint64_t limit, std::string_view what);

/// a * b, saturating at UINT64_MAX.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace forge
