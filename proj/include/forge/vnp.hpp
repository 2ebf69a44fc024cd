#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "forge/coeff_vector.hpp"
#include "forge/hitting.hpp"
#include "forge/poly_class.hpp"
#include "forge/universal.hpp"

namespace forge {

/// f(x) = sum over alpha in {0,1}^m of g(x, alpha). g reads x as variables
/// 0..n-1 and w as n..n+m-1; s = n + m.
struct DefinableSpec {
  Circuit g;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t d = 0;
  std::uint32_t s = 0;
};

void validate_definable(const DefinableSpec& spec);

/// Brute-force sum over all 2^m Boolean assignments, in lexicographic order.
template <Ring R>
typename R::value_type definable_eval(const DefinableSpec& spec, const R& ring,
                                      std::span<const typename R::value_type> x) {
  validate_definable(spec);
  if (x.size() != spec.n) throw InvalidArgument("definable_eval: point has the wrong dimension");
  std::vector<typename R::value_type> point(x.begin(), x.end());
  point.resize(spec.n + spec.m, ring.zero());
  auto acc = ring.zero();
  for (std::uint64_t alpha = 0; alpha < (std::uint64_t{1} << spec.m); ++alpha) {
    for (std::uint32_t j = 0; j < spec.m; ++j)
      point[spec.n + j] = (alpha >> (spec.m - 1 - j)) & 1 ? ring.one() : ring.zero();
    acc = ring.add(acc, circuit_eval(spec.g, ring, std::span<const typename R::value_type>(point)));
  }
  return acc;
}

/// Sparse map from coefficients of g (monomials x^e w^a, total degree <=
/// src_degree) to coefficients of f (monomials x^e, degree <= dst_degree):
/// x^e w^a contributes 2^(m - |supp a|) to x^e.
struct LinearMap {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  MonomialOrder src;
  MonomialOrder dst;
  /// Per source index: destination index, or npos when |e| > dst_degree.
  std::vector<std::size_t> target;
  std::vector<std::uint64_t> weight;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

LinearMap linear_map(std::uint32_t n, std::uint32_t m, std::uint32_t src_degree, std::uint32_t dst_degree);

/// L_{n,d,s} with m = s - n. One shared instance per (n, d, s).
std::shared_ptr<const LinearMap> linear_map_L(std::uint32_t n, std::uint32_t d, std::uint32_t s);

template <Ring R>
CoeffVector<typename R::value_type> apply_L(const LinearMap& L, const R& ring,
                                            const CoeffVector<typename R::value_type>& cg) {
  if (!(cg.order == L.src)) throw InvalidArgument("apply_L: coefficient vector is not under the (x, w) order of L");
  CoeffVector<typename R::value_type> out{L.dst, {}};
  for (const auto& [idx, c] : cg.entries) {
    if (L.target[idx] == LinearMap::npos) continue;
    auto term = ring.mul(ring.from_int(static_cast<std::int64_t>(L.weight[idx])), c);
    auto [it, inserted] = out.entries.try_emplace(L.target[idx], term);
    if (!inserted) it->second = ring.add(it->second, term);
    if (ring.is_zero(it->second)) out.entries.erase(it);
  }
  return out;
}

/// Coefficients of f (degree <= spec.d) through L. Throws InvalidArgument
/// if f has degree above d.
template <Ring R>
CoeffVector<typename R::value_type> definable_to_coeffs(const DefinableSpec& spec, const R& ring) {
  validate_definable(spec);
  const auto p = expand(spec.g, ring);
  const std::uint32_t deg = std::max<std::uint32_t>(p.degree(), spec.d);
  const auto L = linear_map(spec.n, spec.m, deg, deg);
  const auto f = apply_L(L, ring, to_coeffs(p, L.src));
  CoeffVector<typename R::value_type> out{MonomialOrder(spec.n, spec.d), {}};
  for (const auto& [idx, c] : f.entries) {
    const Exponents e = L.dst.exponents(idx);
    if (total_degree(e) > spec.d) throw InvalidArgument("definable polynomial has degree above d");
    out.entries.emplace(out.order.index(e), c);
  }
  return out;
}

/// The s-definable class: f = sum_alpha g(x, alpha) over circuits g with at
/// most s = n + m gates on n + m variables and degree <= s, keeping f of
/// degree <= d (and delta coefficients when requested). m = 0 is the plain class.
FieldClass enumerate_definable_ff(const ClassParams& params, Parallelism par = {});
IntClass enumerate_definable_int(const ClassParams& params, Parallelism par = {});

/// Greedy or random hitting set for a definable class. Greedy FF sets are
/// checked against the ceil(2s(3 log s + 4)) bound (PropertyViolation);
/// integer points come from [d s |delta|]^n.
HittingSet vnp_hitting_set(const FieldClass& cls, const std::string& strategy, std::uint64_t t, std::uint64_t seed,
                           Parallelism par = {});
HittingSet vnp_hitting_set(const IntClass& cls, const std::string& strategy, std::uint64_t t, std::uint64_t seed,
                           Parallelism par = {});

/// L composed with U = universal_build(s, s, s): the f-coefficient of x^e is
/// a polynomial F_e(y) in the wire labels of U.
template <class V>
struct UniversalMapVNP {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t s = 0;
  std::shared_ptr<const UniversalCircuit> U;
  MonomialOrder order;
  std::vector<std::pair<std::size_t, SparsePoly<V>>> coeffs;
  std::uint64_t y_degree = 0;
};

template <Ring R>
UniversalMapVNP<typename R::value_type> universal_map_vnp(const R& ring, std::uint32_t n, std::uint32_t d,
                                                         std::uint32_t s) {
  using V = typename R::value_type;
  if (s < n) throw InvalidArgument("universal_map_vnp: s must be >= n");
  UniversalMapVNP<V> out;
  out.n = n;
  out.d = d;
  out.s = s;
  out.U = std::make_shared<const UniversalCircuit>(universal_build(s, s, s));
  out.order = MonomialOrder(n, d);
  const std::uint32_t m = s - n;
  const auto full = expand(out.U->circuit, ring);
  std::map<std::size_t, SparsePoly<V>> acc;
  for (const auto& [e, c] : full.terms) {
    Exponents x(e.begin(), e.begin() + n);
    if (total_degree(x) > d) continue;
    std::uint32_t support = 0;
    for (std::uint32_t j = 0; j < m; ++j) support += e[n + j] > 0;
    Exponents y(e.begin() + s, e.end());
    const auto w = ring.from_int(static_cast<std::int64_t>(std::uint64_t{1} << (m - support)));
    auto& poly = acc.try_emplace(out.order.index(x), SparsePoly<V>{out.U->y_count, {}}).first->second;
    SparsePoly<V> term{out.U->y_count, {}};
    term.terms.emplace(y, ring.mul(w, c));
    poly = poly_add(ring, poly, term);
  }
  for (auto& [idx, poly] : acc)
    if (!poly.is_zero()) {
      out.y_degree = std::max<std::uint64_t>(out.y_degree, poly.degree());
      out.coeffs.emplace_back(idx, std::move(poly));
    }
  return out;
}

template <Ring R>
CoeffVector<typename R::value_type> universal_map_eval(const UniversalMapVNP<typename R::value_type>& map,
                                                       const R& ring,
                                                       const std::vector<typename R::value_type>& y) {
  if (y.size() != map.U->y_count) throw InvalidArgument("assignment length differs from the number of y variables");
  CoeffVector<typename R::value_type> out{map.order, {}};
  for (const auto& [idx, poly] : map.coeffs) {
    auto v = poly_eval_sparse(ring, poly, std::span<const typename R::value_type>(y));
    if (!ring.is_zero(v)) out.entries.emplace(idx, std::move(v));
  }
  return out;
}

}  // namespace forge
