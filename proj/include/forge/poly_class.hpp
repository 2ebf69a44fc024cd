#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/coeff_vector.hpp"
#include "forge/enumerate.hpp"
#include "forge/parallel.hpp"

namespace forge {

/// Parameters of an enumerated class. mode "ff": coefficients in F_p, the
/// extension K = F_{p^r} hosts hitting-set points. mode "int": coefficients
/// in Z, optionally restricted to delta = {-1, 0, 1}. m > 0 selects the
/// s-definable class with s = n + m.
struct ClassParams {
  std::string mode = "ff";
  std::uint32_t p = 2;
  std::uint32_t r = 1;
  std::uint32_t n = 1;
  std::uint32_t d = 1;
  std::uint32_t s = 1;
  std::uint32_t m = 0;
  bool delta = false;
  /// Constant menu; nullopt selects default_constants.
  std::optional<std::vector<Constant>> constants;
};

/// Z: {0, 1, -1}; F_p: all of F_p when p <= 4, else {0, 1}.
std::vector<Constant> default_constants(const std::string& mode, std::uint32_t p);

/// Rejects malformed parameters (bad mode, non-prime p, q < d^2, delta over a field...).
void validate_class_params(const ClassParams& params);

template <class V>
struct PolyClass {
  ClassParams params;
  MonomialOrder order;
  /// Sorted, pairwise distinct; always contains the zero polynomial.
  std::vector<CoeffVector<V>> members;
  /// Circuits visited by the enumerator.
  std::uint64_t circuits = 0;
};

using FieldClass = PolyClass<FieldElem>;
using IntClass = PolyClass<BigInt>;

/// Enumerates circuits, expands each one incrementally and maps the output
/// polynomial through `transform` (nullopt drops it). Returns the sorted,
/// deduplicated images.
template <Ring R>
std::vector<CoeffVector<typename R::value_type>> enumerate_polys(
    const R& ring, const EnumerationParams& params,
    const std::function<std::optional<CoeffVector<typename R::value_type>>(const SparsePoly<typename R::value_type>&)>&
        transform,
    Parallelism par, std::uint64_t* visited = nullptr) {
  using V = typename R::value_type;
  CircuitEnumerator en(params);
  en.check_budget();
  std::vector<V> consts;
  for (const auto& c : params.constants) consts.push_back(ring.from_constant(c));

  struct Visitor {
    const R& ring;
    const std::vector<V>& consts;
    const std::function<std::optional<CoeffVector<V>>(const SparsePoly<V>&)>& transform;
    std::uint32_t n;
    std::vector<SparsePoly<V>> stack;
    std::set<CoeffVector<V>> found;
    std::uint64_t visited = 0;

    void push(const Circuit& c) {
      const Gate& g = c.gate(c.size() - 1);
      switch (g.op) {
        case GateOp::Var: stack.push_back(poly_variable(ring, n, g.lhs)); break;
        case GateOp::Const: stack.push_back(poly_constant(ring, n, ring.from_constant(c.constants()[g.lhs]))); break;
        case GateOp::Add: stack.push_back(poly_add(ring, stack[g.lhs], stack[g.rhs])); break;
        case GateOp::Mul: stack.push_back(poly_mul(ring, stack[g.lhs], stack[g.rhs])); break;
      }
    }
    void emit(const Circuit&) {
      ++visited;
      if (auto v = transform(stack.back())) found.insert(std::move(*v));
    }
    void pop() { stack.pop_back(); }
  };

  const std::size_t parts = std::max<unsigned>(1, par.threads);
  std::vector<std::set<CoeffVector<V>>> results(parts);
  std::vector<std::uint64_t> counts(parts, 0);
  parallel_for(parts, par, [&](std::size_t part) {
    Visitor v{ring, consts, transform, params.n, {}, {}, 0};
    en.run(v, part, parts);
    results[part] = std::move(v.found);
    counts[part] = v.visited;
  });
  std::set<CoeffVector<V>> merged;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    merged.merge(results[i]);
    total += counts[i];
  }
  if (visited) *visited = total;
  return {merged.begin(), merged.end()};
}

/// The class of polynomials of degree <= d computed by circuits with <= s
/// gates over the constant menu (m must be 0).
FieldClass enumerate_class_ff(const ClassParams& params, Parallelism par = {});
IntClass enumerate_class_int(const ClassParams& params, Parallelism par = {});

}  // namespace forge
