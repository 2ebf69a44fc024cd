#include "forge/monomial.hpp"

#include <limits>
#include <numeric>

#include "forge/budget.hpp"
#include "forge/error.hpp"

namespace forge {

namespace {

// Exponent vectors of m variables with total degree exactly k.
std::uint64_t compositions(std::uint64_t k, std::uint64_t m) {
  if (m == 0) return k == 0 ? 1 : 0;
  return binomial(k + m - 1, m - 1);
}

}  // namespace

std::uint32_t total_degree(std::span<const std::uint32_t> e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

MonomialOrder::MonomialOrder(std::uint32_t n, std::uint32_t d) : n_(n), d_(d) {
  const std::uint64_t count = binomial(std::uint64_t{n} + d, n);
  if (count == std::numeric_limits<std::uint64_t>::max())
    throw BudgetExceeded("monomial order: C(n+d, n) overflows");
  size_ = static_cast<std::size_t>(count);
}

std::size_t MonomialOrder::index(std::span<const std::uint32_t> e) const {
  if (e.size() != n_)
    throw InvalidArgument("monomial_index: exponent vector has " + std::to_string(e.size()) + " entries, expected " +
                          std::to_string(n_));
  const std::uint32_t deg = total_degree(e);
  if (deg > d_)
    throw InvalidArgument("monomial_index: degree " + std::to_string(deg) + " exceeds " + std::to_string(d_));
  std::uint64_t idx = deg == 0 ? 0 : binomial(std::uint64_t{n_} + deg - 1, n_);
  std::uint32_t remaining = deg;
  for (std::uint32_t i = 0; i + 1 < n_ && remaining > 0; ++i) {
    for (std::uint32_t c = e[i] + 1; c <= remaining; ++c) idx += compositions(remaining - c, n_ - i - 1);
    remaining -= e[i];
  }
  return static_cast<std::size_t>(idx);
}

Exponents MonomialOrder::exponents(std::size_t index) const {
  if (index >= size_) throw InvalidArgument("monomial index " + std::to_string(index) + " out of range");
  std::uint32_t deg = 0;
  while (binomial(std::uint64_t{n_} + deg, n_) <= index) ++deg;
  std::uint64_t rest = index - (deg == 0 ? 0 : binomial(std::uint64_t{n_} + deg - 1, n_));
  Exponents e(n_, 0);
  std::uint32_t remaining = deg;
  for (std::uint32_t i = 0; i + 1 < n_; ++i) {
    std::uint32_t c = remaining;
    while (true) {
      const std::uint64_t block = compositions(remaining - c, n_ - i - 1);
      if (rest < block) break;
      rest -= block;
      --c;
    }
    e[i] = c;
    remaining -= c;
  }
  if (n_ > 0) e[n_ - 1] = remaining;
  return e;
}

bool MonomialOrder::next_in_degree(Exponents& e) {
  // Decreasing lex successor with the same total degree.
  const std::size_t n = e.size();
  if (n < 2) return false;
  // Find the rightmost position i < n-1 with e[i] > 0.
  std::size_t i = n - 1;
  while (i-- > 0) {
    if (e[i] > 0) break;
    if (i == 0) return false;
  }
  if (e[i] == 0) return false;
  const std::uint32_t tail = e[n - 1];
  e[n - 1] = 0;
  --e[i];
  e[i + 1] = tail + 1;
  return true;
}

}  // namespace forge
