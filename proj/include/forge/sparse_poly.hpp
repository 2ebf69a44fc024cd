#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "forge/budget.hpp"
#include "forge/circuit.hpp"
#include "forge/error.hpp"
#include "forge/monomial.hpp"
#include "forge/ring.hpp"

namespace forge {

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
template <class V>
struct SparsePoly {
  std::uint32_t n = 0;
  std::map<Exponents, V> terms;

  bool is_zero() const { return terms.empty(); }
  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, total_degree(e));
    return d;
  }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.n == b.n && a.terms == b.terms; }
};

template <Ring R>
SparsePoly<typename R::value_type> poly_constant(const R& ring, std::uint32_t n, const typename R::value_type& c) {
  SparsePoly<typename R::value_type> p{n, {}};
  if (!ring.is_zero(c)) p.terms.emplace(Exponents(n, 0), c);
  return p;
}

template <Ring R>
SparsePoly<typename R::value_type> poly_variable(const R& ring, std::uint32_t n, std::uint32_t i) {
  SparsePoly<typename R::value_type> p{n, {}};
  Exponents e(n, 0);
  e[i] = 1;
  p.terms.emplace(std::move(e), ring.one());
  return p;
}

template <Ring R>
SparsePoly<typename R::value_type> poly_add(const R& ring, const SparsePoly<typename R::value_type>& a,
                                            const SparsePoly<typename R::value_type>& b) {
  SparsePoly<typename R::value_type> out = a;
  for (const auto& [e, c] : b.terms) {
    auto [it, inserted] = out.terms.try_emplace(e, c);
    if (!inserted) {
      it->second = ring.add(it->second, c);
      if (ring.is_zero(it->second)) out.terms.erase(it);
    }
  }
  return out;
}

template <Ring R>
SparsePoly<typename R::value_type> poly_neg(const R& ring, SparsePoly<typename R::value_type> a) {
  for (auto& [e, c] : a.terms) c = ring.neg(c);
  return a;
}

template <Ring R>
SparsePoly<typename R::value_type> poly_mul(const R& ring, const SparsePoly<typename R::value_type>& a,
                                            const SparsePoly<typename R::value_type>& b,
                                            std::uint64_t max_terms = Budget::global().max_terms) {
  SparsePoly<typename R::value_type> out{a.n, {}};
  Exponents e(a.n);
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      for (std::uint32_t k = 0; k < a.n; ++k) e[k] = ea[k] + eb[k];
      auto prod = ring.mul(ca, cb);
      auto it = out.terms.find(e);
      if (it == out.terms.end()) {
        if (!ring.is_zero(prod)) out.terms.emplace(e, std::move(prod));
      } else {
        it->second = ring.add(it->second, prod);
        if (ring.is_zero(it->second)) out.terms.erase(it);
      }
      if (out.terms.size() > max_terms) require_budget(out.terms.size(), max_terms, "sparse polynomial terms");
    }
  }
  return out;
}

template <Ring R>
typename R::value_type poly_eval_sparse(const R& ring, const SparsePoly<typename R::value_type>& p,
                                        std::span<const typename R::value_type> point) {
  auto acc = ring.zero();
  for (const auto& [e, c] : p.terms) {
    auto term = c;
    for (std::uint32_t k = 0; k < p.n; ++k)
      for (std::uint32_t j = 0; j < e[k]; ++j) term = ring.mul(term, point[k]);
    acc = ring.add(acc, term);
  }
  return acc;
}

/// Image of a circuit variable under expansion: a variable of the result
/// polynomial, or a constant substituted for it.
template <class V>
using VarImage = std::variant<std::uint32_t, V>;

/// Bottom-up symbolic expansion. images[i] says what circuit variable i
/// becomes; the result has target_vars variables.
template <Ring R>
SparsePoly<typename R::value_type> expand(const Circuit& c, const R& ring,
                                          const std::vector<VarImage<typename R::value_type>>& images,
                                          std::uint32_t target_vars,
                                          std::uint64_t max_terms = Budget::global().max_terms) {
  using V = typename R::value_type;
  using P = SparsePoly<V>;
  if (images.size() != c.num_vars()) throw InvalidArgument("expand: substitution does not cover every variable");
  if (c.size() == 0) throw InvalidArgument("expand: empty circuit");
  const auto last = last_uses(c);
  const std::uint32_t out = c.output();
  std::vector<P> val(c.size());
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    switch (g.op) {
      case GateOp::Var:
        if (const auto* v = std::get_if<std::uint32_t>(&images[g.lhs])) {
          if (*v >= target_vars) throw InvalidArgument("expand: substitution target out of range");
          val[i] = poly_variable(ring, target_vars, *v);
        } else {
          val[i] = poly_constant(ring, target_vars, std::get<V>(images[g.lhs]));
        }
        break;
      case GateOp::Const: val[i] = poly_constant(ring, target_vars, ring.from_constant(c.constants()[g.lhs])); break;
      case GateOp::Add: val[i] = poly_add(ring, val[g.lhs], val[g.rhs]); break;
      case GateOp::Mul: val[i] = poly_mul(ring, val[g.lhs], val[g.rhs], max_terms); break;
    }
    if (g.op == GateOp::Add || g.op == GateOp::Mul) {
      if (last[g.lhs] == i && g.lhs != out) val[g.lhs] = P{};
      if (last[g.rhs] == i && g.rhs != out) val[g.rhs] = P{};
    }
  }
  return std::move(val[out]);
}

template <Ring R>
SparsePoly<typename R::value_type> expand(const Circuit& c, const R& ring,
                                          std::uint64_t max_terms = Budget::global().max_terms) {
  std::vector<VarImage<typename R::value_type>> images;
  for (std::uint32_t i = 0; i < c.num_vars(); ++i) images.emplace_back(i);
  return expand(c, ring, images, c.num_vars(), max_terms);
}

}  // namespace forge
