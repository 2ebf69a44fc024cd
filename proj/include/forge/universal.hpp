#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "forge/circuit.hpp"
#include "forge/error.hpp"
#include "forge/monomial.hpp"
#include "forge/sparse_poly.hpp"

namespace forge {

/// The target does not have the layered shape U can absorb.
class NotEmbeddable : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// One node of a layer: its head gate, the positions of its inputs in the
/// previous layer and, for sum nodes, the y variable on each input wire.
struct UniversalNode {
  std::uint32_t gate = 0;
  std::vector<std::uint32_t> inputs;
  std::vector<std::uint32_t> wires;
};

/// Layered universal circuit U(x, y). Layer 0 holds x_1..x_n and the
/// constant 1; layer 1 holds every product of 5 leaves (monomials of degree
/// <= 5); above it sum and product layers alternate and the last layer is a
/// single sum gate. Variables 0..n-1 are x, n..n+y_count-1 are y.
struct UniversalCircuit {
  Circuit circuit;
  std::vector<std::vector<UniversalNode>> layers;
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t s = 0;
  /// Number of layers, 2k + 1 for k product layers.
  std::uint32_t ell = 0;
  std::uint32_t y_count = 0;
  /// Exponent vector of each layer-1 product.
  std::vector<Exponents> monomials;
  /// Sorted 5-subsets of the preceding sum layer, per product layer above layer 1.
  std::vector<std::vector<std::array<std::uint32_t, 5>>> subsets;

  std::uint32_t product_layers() const { return (ell - 1) / 2; }
};

UniversalCircuit universal_build(std::uint32_t n, std::uint32_t d, std::uint32_t s);

struct UniversalStats {
  std::uint64_t size = 0;
  std::uint64_t x_degree = 0;
  std::uint64_t y_degree = 0;
  std::uint64_t y_count = 0;
  std::uint64_t size_bound = 0;    // ell (n s)^5
  std::uint64_t degree_bound = 0;  // 5^ell
  std::uint64_t y_bound = 0;       // ell (n s)^6
};

/// Re-derives the layer structure from the gates and checks every invariant
/// and bound. Throws PropertyViolation on the first failure.
UniversalStats universal_check(const UniversalCircuit& U);

namespace detail {

/// A target circuit flattened into alternating sums and products.
template <class V>
struct RawSum;

template <class V>
struct RawProd {
  V coef;
  std::vector<std::uint32_t> leaves;
  std::vector<RawSum<V>> sums;
};

template <class V>
struct RawSum {
  std::vector<RawProd<V>> terms;
};

template <Ring R>
class Embedder {
 public:
  using V = typename R::value_type;

  Embedder(const UniversalCircuit& U, const Circuit& target, const R& ring) : U_(U), t_(target), ring_(ring) {
    for (std::size_t i = 0; i < U.monomials.size(); ++i) mono_index_.emplace(U.monomials[i], i);
    const std::uint32_t k = U.product_layers();
    sums_.resize(k + 2);
    prods_.resize(k + 1);
    subset_index_.resize(k + 1);
    for (std::uint32_t j = 2; j <= k; ++j)
      for (std::size_t i = 0; i < U.subsets[j - 2].size(); ++i) subset_index_[j].emplace(U.subsets[j - 2][i], i);
  }

  std::vector<V> run() {
    if (t_.num_vars() != U_.n) throw NotEmbeddable("target has a different variable count than U");
    const std::uint32_t k = U_.product_layers();
    const RawSum<V> root = parse_sum(t_.output());
    if (sum_level(root) > k + 1) throw NotEmbeddable("target is deeper than U");
    const std::uint32_t top = canon_sum(root, k + 1);

    assignment_.assign(U_.y_count, ring_.zero());
    const UniversalNode& out = U_.layers.back().front();
    // Root wiring: coefficient of each level-k product.
    std::vector<std::uint32_t> used;
    for (const auto& [prod, coef] : sums_[k + 1][top]) used.push_back(prod);
    std::vector<std::uint32_t> node_of = place_products(k, used);
    for (const auto& [prod, coef] : sums_[k + 1][top]) set_wire(out, node_of[prod], coef);
    return assignment_;
  }

 private:
  using SumKey = std::vector<std::pair<std::uint32_t, V>>;  // (product id, coefficient)
  using ProdKey = std::vector<std::uint32_t>;               // sorted sum ids, or {monomial}

  RawSum<V> parse_sum(std::uint32_t gate) const {
    RawSum<V> out;
    collect_terms(gate, out);
    return out;
  }

  void collect_terms(std::uint32_t gate, RawSum<V>& out) const {
    const Gate& g = t_.gate(gate);
    if (g.op == GateOp::Add) {
      collect_terms(g.lhs, out);
      collect_terms(g.rhs, out);
      return;
    }
    RawProd<V> p{ring_.one(), {}, {}};
    collect_factors(gate, p);
    out.terms.push_back(std::move(p));
  }

  void collect_factors(std::uint32_t gate, RawProd<V>& p) const {
    const Gate& g = t_.gate(gate);
    switch (g.op) {
      case GateOp::Var: p.leaves.push_back(g.lhs); break;
      case GateOp::Const: p.coef = ring_.mul(p.coef, ring_.from_constant(t_.constants()[g.lhs])); break;
      case GateOp::Mul:
        collect_factors(g.lhs, p);
        collect_factors(g.rhs, p);
        break;
      case GateOp::Add: p.sums.push_back(parse_sum(gate)); break;
    }
    if (p.leaves.size() + p.sums.size() > 5) throw NotEmbeddable("product with fan-in above 5");
  }

  static std::uint32_t sum_level(const RawSum<V>& s) {
    std::uint32_t level = 0;
    for (const auto& t : s.terms) level = std::max(level, prod_level(t));
    return level + 1;
  }

  static std::uint32_t prod_level(const RawProd<V>& p) {
    std::uint32_t level = 1;
    for (const auto& s : p.sums) level = std::max(level, sum_level(s));
    return level;
  }

  std::uint32_t intern_sum(std::uint32_t level, SumKey key) {
    auto& table = sums_[level];
    for (std::uint32_t i = 0; i < table.size(); ++i)
      if (table[i] == key) return i;
    table.push_back(std::move(key));
    return static_cast<std::uint32_t>(table.size() - 1);
  }

  std::uint32_t intern_prod(std::uint32_t level, ProdKey key) {
    auto& table = prods_[level];
    for (std::uint32_t i = 0; i < table.size(); ++i)
      if (table[i] == key) return i;
    table.push_back(std::move(key));
    return static_cast<std::uint32_t>(table.size() - 1);
  }

  // Sum of level j: a combination of level j-1 products.
  std::uint32_t canon_sum(const RawSum<V>& s, std::uint32_t level) {
    std::map<std::uint32_t, V> acc;
    for (const auto& t : s.terms) {
      V coef = t.coef;
      const std::uint32_t id = canon_prod(t, level - 1, coef);
      auto [it, inserted] = acc.try_emplace(id, coef);
      if (!inserted) it->second = ring_.add(it->second, coef);
    }
    SumKey key;
    for (auto& [id, c] : acc)
      if (!ring_.is_zero(c)) key.emplace_back(id, c);
    return intern_sum(level, std::move(key));
  }

  // Product of level j; scalar factors are folded into coef.
  std::uint32_t canon_prod(const RawProd<V>& p, std::uint32_t level, V& coef) {
    if (level == 1) {
      if (!p.sums.empty()) throw NotEmbeddable("product nesting exceeds U's depth");
      Exponents e(U_.n, 0);
      for (auto v : p.leaves) ++e[v];
      return intern_prod(1, {static_cast<std::uint32_t>(mono_index_.at(e))});
    }
    ProdKey factors;
    if (prod_level(p) < level) {
      // Lift: the product becomes the only non-trivial factor one level up.
      const std::uint32_t below = canon_prod(p, level - 1, coef);
      factors.push_back(intern_sum(level, {{below, ring_.one()}}));
    } else {
      for (const auto& s : p.sums) factors.push_back(canon_sum(s, level));
      for (auto v : p.leaves) {
        RawProd<V> leaf{ring_.one(), {v}, {}};
        factors.push_back(canon_sum(RawSum<V>{{leaf}}, level));
      }
    }
    while (factors.size() < 5) factors.push_back(one_sum(level));
    std::sort(factors.begin(), factors.end());
    return intern_prod(level, std::move(factors));
  }

  std::uint32_t one_sum(std::uint32_t level) {
    RawProd<V> empty{ring_.one(), {}, {}};
    return canon_sum(RawSum<V>{{empty}}, level);
  }

  // Assigns U nodes to the given level-j products and wires everything
  // below them. Returns product id -> node position in layer 2j - 1.
  std::vector<std::uint32_t> place_products(std::uint32_t level, const std::vector<std::uint32_t>& used) {
    std::vector<std::uint32_t> node_of(prods_[level].size(), 0);
    if (level == 1) {
      for (auto id : used) node_of[id] = prods_[1][id][0];
      return node_of;
    }
    // Each sum id needs as many gates as its largest multiplicity in one product.
    std::map<std::uint32_t, std::uint32_t> need;
    for (auto id : used) {
      const auto& f = prods_[level][id];
      for (std::size_t i = 0; i < f.size();) {
        std::size_t j = i;
        while (j < f.size() && f[j] == f[i]) ++j;
        need[f[i]] = std::max<std::uint32_t>(need[f[i]], static_cast<std::uint32_t>(j - i));
        i = j;
      }
    }
    std::map<std::uint32_t, std::vector<std::uint32_t>> gates_of;
    std::vector<std::uint32_t> gate_sum;
    for (const auto& [sum, count] : need)
      for (std::uint32_t c = 0; c < count; ++c) {
        gates_of[sum].push_back(static_cast<std::uint32_t>(gate_sum.size()));
        gate_sum.push_back(sum);
      }
    if (gate_sum.size() > U_.s)
      throw NotEmbeddable("target needs " + std::to_string(gate_sum.size()) + " sum gates in a layer, U has " +
                          std::to_string(U_.s));
    // Spare gates repeat the constant one so every 5-subset stays well defined.
    for (auto id : used) {
      const auto& f = prods_[level][id];
      std::array<std::uint32_t, 5> subset{};
      std::map<std::uint32_t, std::uint32_t> taken;
      for (std::size_t i = 0; i < 5; ++i) subset[i] = gates_of[f[i]][taken[f[i]]++];
      std::sort(subset.begin(), subset.end());
      node_of[id] = static_cast<std::uint32_t>(subset_index_[level].at(subset));
    }
    std::vector<std::uint32_t> below;
    for (auto sum : gate_sum)
      for (const auto& [prod, coef] : sums_[level][sum]) below.push_back(prod);
    std::sort(below.begin(), below.end());
    below.erase(std::unique(below.begin(), below.end()), below.end());
    const auto below_node = place_products(level - 1, below);
    const auto& sum_layer = U_.layers[2 * level - 2];
    for (std::uint32_t g = 0; g < gate_sum.size(); ++g)
      for (const auto& [prod, coef] : sums_[level][gate_sum[g]])
        set_wire(sum_layer[g], below_node[prod], coef);
    return node_of;
  }

  void set_wire(const UniversalNode& node, std::uint32_t input, const V& coef) {
    for (std::size_t i = 0; i < node.inputs.size(); ++i)
      if (node.inputs[i] == input) {
        assignment_[node.wires[i] - U_.n] = coef;
        return;
      }
    throw Error("universal_embed: missing wire");
  }

  const UniversalCircuit& U_;
  const Circuit& t_;
  const R& ring_;
  std::map<Exponents, std::size_t> mono_index_;
  std::vector<std::vector<SumKey>> sums_;
  std::vector<std::vector<ProdKey>> prods_;
  std::vector<std::map<std::array<std::uint32_t, 5>, std::size_t>> subset_index_;
  std::vector<V> assignment_;
};

}  // namespace detail

/// U(x, a) with the y variables replaced by a, expanded over x.
template <Ring R>
SparsePoly<typename R::value_type> universal_specialize(const UniversalCircuit& U, const R& ring,
                                                        const std::vector<typename R::value_type>& a) {
  if (a.size() != U.y_count) throw InvalidArgument("assignment length differs from the number of y variables");
  std::vector<VarImage<typename R::value_type>> images;
  for (std::uint32_t i = 0; i < U.n; ++i) images.emplace_back(i);
  for (const auto& v : a) images.emplace_back(v);
  return expand(U.circuit, ring, images, U.n);
}

/// Finds y with U(x, y) = target(x) for a target already in layered
/// alternating sum/product form (products of at most 5 factors, no deeper
/// than U, at most s sum gates per layer). Verified by expansion.
template <Ring R>
std::vector<typename R::value_type> universal_embed(const UniversalCircuit& U, const Circuit& target,
                                                    const R& ring) {
  target.validate();
  detail::Embedder<R> embedder(U, target, ring);
  auto a = embedder.run();
  if (!(universal_specialize(U, ring, a) == expand(target, ring)))
    throw PropertyViolation("universal_embed: specialization differs from the target");
  return a;
}

}  // namespace forge
