#include "forge/budget.hpp"

#include <cstdlib>
#include <limits>

#include "forge/error.hpp"

namespace forge {

Budget Budget::parse(std::string_view spec) {
  Budget b;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    const std::string_view item = spec.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("FORGE_BUDGET: expected key=value, got '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    std::uint64_t value = 0;
    try {
      value = std::stoull(std::string(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw InvalidArgument("FORGE_BUDGET: bad value for '" + key + "'");
    }
    if (key == "field_size") b.max_field_size = value;
    else if (key == "circuits") b.max_circuits = value;
    else if (key == "terms") b.max_terms = value;
    else if (key == "matrix_columns") b.max_matrix_columns = value;
    else if (key == "sum_vars") b.max_sum_vars = value;
    else if (key == "grid_points") b.max_grid_points = value;
    else if (key == "siegel_table") b.max_siegel_table = value;
    else if (key == "gates") b.max_gates = value;
    else if (key == "factors") b.max_factors = value;
    else if (key == "exact_bits") b.max_exact_bits = value;
    else throw InvalidArgument("FORGE_BUDGET: unknown key '" + key + "'");
  }
  return b;
}

Budget Budget::from_env() {
  const char* env = std::getenv("FORGE_BUDGET");
  return env ? parse(env) : Budget{};
}

const Budget& Budget::global() {
  static const Budget budget = from_env();
  return budget;
}

void require_budget(std::uint64_t needed, std::uint64_t limit, std::string_view what) {
  if (needed > limit)
    throw BudgetExceeded(std::string(what) + ": " + (needed == std::numeric_limits<std::uint64_t>::max()
                                                         ? std::string("overflow")
                                                         : std::to_string(needed)) +
                         " exceeds budget " + std::to_string(limit));
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a) return std::numeric_limits<std::uint64_t>::max();
  return a + b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(out);
}

}  // namespace forge
