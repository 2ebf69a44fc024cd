#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace forge {

using Exponents = std::vector<std::uint32_t>;

std::uint32_t total_degree(std::span<const std::uint32_t> e);

/// Graded lexicographic order on monomials of degree <= d in n variables:
/// by total degree, then lexicographically decreasing exponent vector.
/// For n = 2, d = 2: 1, x1, x2, x1^2, x1x2, x2^2.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(std::uint32_t n, std::uint32_t d);

  std::uint32_t num_vars() const { return n_; }
  std::uint32_t degree() const { return d_; }
  /// N = C(n + d, n).
  std::size_t size() const { return size_; }

  std::size_t index(std::span<const std::uint32_t> e) const;
  Exponents exponents(std::size_t index) const;

  /// Calls fn(index, exponents) for every monomial in order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    Exponents e(n_, 0);
    std::size_t idx = 0;
    for (std::uint32_t deg = 0; deg <= d_; ++deg) {
      if (n_ == 0) {
        if (deg == 0) fn(idx++, static_cast<const Exponents&>(e));
        continue;
      }
      std::fill(e.begin(), e.end(), 0);
      e[0] = deg;
      while (true) {
        fn(idx++, static_cast<const Exponents&>(e));
        if (!next_in_degree(e)) break;
      }
    }
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) { return a.n_ == b.n_ && a.d_ == b.d_; }

 private:
  static bool next_in_degree(Exponents& e);

  std::uint32_t n_ = 0;
  std::uint32_t d_ = 0;
  std::size_t size_ = 1;
};

}  // namespace forge
