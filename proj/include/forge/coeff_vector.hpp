#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "forge/bigint.hpp"
#include "forge/circuit.hpp"
#include "forge/error.hpp"
#include "forge/field.hpp"
#include "forge/monomial.hpp"
#include "forge/sparse_poly.hpp"

namespace forge {

/// Coefficient vector of a polynomial under a MonomialOrder. Sparse; never
/// stores zero entries.
template <class V>
struct CoeffVector {
  MonomialOrder order;
  std::map<std::size_t, V> entries;

  bool is_zero() const { return entries.empty(); }

  friend bool operator==(const CoeffVector& a, const CoeffVector& b) {
    return a.order == b.order && a.entries == b.entries;
  }
  /// Canonical total order used for deduplication and class listings.
  friend bool operator<(const CoeffVector& a, const CoeffVector& b) {
    if (a.order.num_vars() != b.order.num_vars()) return a.order.num_vars() < b.order.num_vars();
    if (a.order.degree() != b.order.degree()) return a.order.degree() < b.order.degree();
    return std::lexicographical_compare(
        a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
        [](const auto& x, const auto& y) { return x.first != y.first ? x.first < y.first : x.second < y.second; });
  }
};

using IntVector = CoeffVector<BigInt>;
using FieldVector = CoeffVector<FieldElem>;

/// Largest total degree among nonzero entries (0 for the zero vector).
template <class V>
std::uint32_t coeff_degree(const CoeffVector<V>& v) {
  std::uint32_t d = 0;
  for (const auto& [idx, c] : v.entries) d = std::max(d, total_degree(v.order.exponents(idx)));
  return d;
}

/// Throws InvalidArgument (degree overflow) if p has a term of degree > order.degree().
template <class V>
CoeffVector<V> to_coeffs(const SparsePoly<V>& p, const MonomialOrder& order) {
  if (p.n != order.num_vars()) throw InvalidArgument("to_coeffs: variable count mismatch");
  CoeffVector<V> out{order, {}};
  for (const auto& [e, c] : p.terms) {
    const std::uint32_t deg = total_degree(e);
    if (deg > order.degree())
      throw InvalidArgument("degree overflow: term of degree " + std::to_string(deg) + " exceeds d = " +
                            std::to_string(order.degree()));
    out.entries.emplace(order.index(e), c);
  }
  return out;
}

template <class V>
SparsePoly<V> from_coeffs(const CoeffVector<V>& v) {
  SparsePoly<V> p{v.order.num_vars(), {}};
  for (const auto& [idx, c] : v.entries) p.terms.emplace(v.order.exponents(idx), c);
  return p;
}

template <Ring R>
CoeffVector<typename R::value_type> circuit_to_coeffs(const Circuit& c, const R& ring, const MonomialOrder& order) {
  if (c.num_vars() != order.num_vars()) throw InvalidArgument("circuit_to_coeffs: variable count mismatch");
  return to_coeffs(expand(c, ring), order);
}

template <Ring R>
CoeffVector<typename R::value_type> coeff_add(const R& ring, const CoeffVector<typename R::value_type>& a,
                                              const CoeffVector<typename R::value_type>& b) {
  if (!(a.order == b.order)) throw InvalidArgument("coefficient vectors use different monomial orders");
  auto out = a;
  for (const auto& [idx, c] : b.entries) {
    auto [it, inserted] = out.entries.try_emplace(idx, c);
    if (!inserted) {
      it->second = ring.add(it->second, c);
      if (ring.is_zero(it->second)) out.entries.erase(it);
    }
  }
  return out;
}

/// Sum over monomials of v_m * m(point).
template <Ring R>
typename R::value_type poly_eval(const R& ring, const CoeffVector<typename R::value_type>& v,
                                 std::span<const typename R::value_type> point) {
  if (point.size() != v.order.num_vars())
    throw InvalidArgument("poly_eval: point has " + std::to_string(point.size()) + " coordinates, expected " +
                          std::to_string(v.order.num_vars()));
  auto acc = ring.zero();
  for (const auto& [idx, c] : v.entries) {
    const Exponents e = v.order.exponents(idx);
    auto term = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (std::uint32_t j = 0; j < e[k]; ++j) term = ring.mul(term, point[k]);
    acc = ring.add(acc, term);
  }
  return acc;
}

/// Dense coefficient list of length N (zeros included).
template <Ring R>
std::vector<typename R::value_type> to_dense(const R& ring, const CoeffVector<typename R::value_type>& v) {
  std::vector<typename R::value_type> out(v.order.size(), ring.zero());
  for (const auto& [idx, c] : v.entries) out[idx] = c;
  return out;
}

template <Ring R>
CoeffVector<typename R::value_type> from_dense(const R& ring, const MonomialOrder& order,
                                               std::span<const typename R::value_type> dense) {
  if (dense.size() != order.size()) throw InvalidArgument("dense vector length does not match N");
  CoeffVector<typename R::value_type> out{order, {}};
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!ring.is_zero(dense[i])) out.entries.emplace(i, dense[i]);
  return out;
}

/// True when every entry lies in {-1, 0, 1}.
bool is_delta(const IntVector& v);

}  // namespace forge
