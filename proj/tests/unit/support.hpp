#pragma once

#include <random>
#include <string>
#include <vector>

#include "forge/circuit.hpp"
#include "forge/coeff_vector.hpp"
#include "forge/rng.hpp"

namespace forge::test {

/// Gate list as text, e.g. "v0 c1 a0,1"; used to compare circuits from
/// different generators.
inline std::string signature(const Circuit& c) {
  std::string out;
  for (const auto& g : c.gates()) {
    switch (g.op) {
      case GateOp::Var: out += "v" + std::to_string(g.lhs); break;
      case GateOp::Const: out += "c" + describe(c.constants()[g.lhs]); break;
      case GateOp::Add: out += "a" + std::to_string(g.lhs) + "," + std::to_string(g.rhs); break;
      case GateOp::Mul: out += "m" + std::to_string(g.lhs) + "," + std::to_string(g.rhs); break;
    }
    out += " ";
  }
  return out;
}

/// Naive generator: all gate sequences of length 1..s, built level by level
/// from explicit gate lists.
inline std::vector<Circuit> naive_circuits(std::uint32_t n, std::uint32_t s, const std::vector<Constant>& consts) {
  std::vector<Circuit> all;
  std::vector<Circuit> level{Circuit(n)};
  for (std::uint32_t k = 0; k < s; ++k) {
    std::vector<Circuit> next;
    for (const auto& base : level) {
      std::vector<Gate> options;
      std::vector<Circuit> grown;
      for (std::uint32_t v = 0; v < n; ++v) {
        Circuit c = base;
        c.add_var(v);
        grown.push_back(c);
      }
      for (const auto& value : consts) {
        Circuit c = base;
        c.add_const(value);
        grown.push_back(c);
      }
      for (int op = 0; op < 2; ++op)
        for (std::uint32_t i = 0; i < k; ++i)
          for (std::uint32_t j = i; j < k; ++j) {
            Circuit c = base;
            if (op == 0)
              c.add_add(i, j);
            else
              c.add_mul(i, j);
            grown.push_back(c);
          }
      next.insert(next.end(), grown.begin(), grown.end());
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

/// Random circuit with the given gate count over n variables and the
/// constants {0, 1, -1, 2}.
inline Circuit random_circuit(std::mt19937_64& rng, std::uint32_t n, std::uint32_t gates, bool allow_consts = true) {
  Circuit c(n);
  for (std::uint32_t k = 0; k < gates; ++k) {
    const std::uint64_t kind = k == 0 ? uniform_below(rng, 2) : uniform_below(rng, 4);
    if (kind == 0 || (kind == 1 && !allow_consts)) {
      c.add_var(static_cast<std::uint32_t>(uniform_below(rng, n)));
    } else if (kind == 1) {
      static const long values[] = {0, 1, -1, 2};
      c.add_const(BigInt(values[uniform_below(rng, 4)]));
    } else {
      const auto i = static_cast<std::uint32_t>(uniform_below(rng, k));
      const auto j = static_cast<std::uint32_t>(uniform_below(rng, k));
      if (kind == 2)
        c.add_add(i, j);
      else
        c.add_mul(i, j);
    }
  }
  return c;
}

/// Coefficients of sum over alpha in {0,1}^m of g(x, alpha), by substituting
/// every Boolean assignment and adding the expansions.
template <Ring R>
CoeffVector<typename R::value_type> brute_definable(const Circuit& g, std::uint32_t n, std::uint32_t m, const R& ring,
                                                    const MonomialOrder& order) {
  using V = typename R::value_type;
  SparsePoly<V> sum{n, {}};
  for (std::uint64_t alpha = 0; alpha < (std::uint64_t{1} << m); ++alpha) {
    std::vector<VarImage<V>> images;
    for (std::uint32_t i = 0; i < n; ++i) images.emplace_back(i);
    for (std::uint32_t j = 0; j < m; ++j) images.emplace_back((alpha >> j) & 1 ? ring.one() : ring.zero());
    sum = poly_add(ring, sum, expand(g, ring, images, n));
  }
  return to_coeffs(sum, order);
}

using Term = std::pair<long, std::vector<std::uint32_t>>;

// coef * leaves..., chained with Mul; returns the gate.
inline std::uint32_t add_term(Circuit& c, const Term& t) {
  std::uint32_t g = c.add_const(BigInt(t.first));
  for (auto v : t.second) g = c.add_mul(g, c.add_var(v));
  return g;
}

inline std::uint32_t add_sum(Circuit& c, const std::vector<Term>& terms) {
  std::uint32_t acc = add_term(c, terms[0]);
  for (std::size_t i = 1; i < terms.size(); ++i) acc = c.add_add(acc, add_term(c, terms[i]));
  return acc;
}

inline Circuit sum_circuit(std::uint32_t n, const std::vector<Term>& terms) {
  Circuit c(n);
  c.set_output(add_sum(c, terms));
  return c;
}

// sum_i coef_i * prod_t S_{i,t}
inline Circuit product_of_sums(std::uint32_t n, const std::vector<std::pair<long, std::vector<std::vector<Term>>>>& prods) {
  Circuit c(n);
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < prods.size(); ++i) {
    std::uint32_t g = c.add_const(BigInt(prods[i].first));
    for (const auto& s : prods[i].second) g = c.add_mul(g, add_sum(c, s));
    acc = i == 0 ? g : c.add_add(acc, g);
  }
  c.set_output(acc);
  return c;
}


}  // namespace forge::test
