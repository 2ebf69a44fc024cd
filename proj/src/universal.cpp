#include "forge/universal.hpp"

#include <functional>
#include <limits>
#include <set>

#include "forge/budget.hpp"

namespace forge {

namespace {

std::uint32_t ceil_log5(std::uint32_t d) {
  std::uint32_t k = 0;
  for (std::uint64_t p = 1; p < d; p *= 5) ++k;
  return k;
}

// Balanced fan-in-2 tree for a product of five gates.
std::uint32_t product5(Circuit& c, const std::array<std::uint32_t, 5>& g) {
  const std::uint32_t left = c.add_mul(g[0], g[1]);
  const std::uint32_t right = c.add_mul(g[2], g[3]);
  const std::uint32_t both = c.add_mul(left, right);
  return c.add_mul(both, g[4]);
}

void for_each_subset(std::uint32_t size, const std::function<void(const std::array<std::uint32_t, 5>&)>& f) {
  if (size < 5) return;
  std::array<std::uint32_t, 5> idx{0, 1, 2, 3, 4};
  while (true) {
    f(idx);
    int i = 4;
    while (i >= 0 && idx[i] == size - 5 + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < 5; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

UniversalCircuit universal_build(std::uint32_t n, std::uint32_t d, std::uint32_t s) {
  if (n == 0 || d == 0 || s == 0) throw InvalidArgument("universal_build: n, d and s must be >= 1");
  const std::uint32_t k = std::max<std::uint32_t>(1, ceil_log5(d));
  if (k >= 2 && s < 5)
    throw InvalidArgument("universal_build: degree " + std::to_string(d) + " needs product layers over s >= 5 sum gates");

  // Projected size, checked before any gate is created.
  const std::uint64_t leaves = n + 1;
  const std::uint64_t mono = binomial(n + 5, 5);
  const std::uint64_t subsets = binomial(s, 5);
  std::uint64_t total = saturating_add(leaves, saturating_mul(mono, 4));
  std::uint64_t prev = mono;
  for (std::uint32_t j = 1; j < k; ++j) {
    total = saturating_add(total, saturating_mul(s, saturating_mul(prev, 3)));
    total = saturating_add(total, saturating_mul(subsets, 4));
    prev = subsets;
  }
  total = saturating_add(total, saturating_mul(prev, 3));
  require_budget(total, Budget::global().max_gates, "universal circuit gates");

  std::uint64_t ycount = 0;
  std::uint64_t width = mono;
  for (std::uint32_t j = 1; j < k; ++j) {
    ycount = saturating_add(ycount, saturating_mul(s, width));
    width = subsets;
  }
  ycount = saturating_add(ycount, width);
  if (ycount > std::numeric_limits<std::uint32_t>::max() - n) throw BudgetExceeded("universal circuit: too many y variables");

  UniversalCircuit U;
  U.n = n;
  U.d = d;
  U.s = s;
  U.ell = 2 * k + 1;
  U.circuit = Circuit(n + static_cast<std::uint32_t>(ycount));
  Circuit& c = U.circuit;
  std::uint32_t next_y = n;

  std::vector<UniversalNode> layer;
  for (std::uint32_t i = 0; i < n; ++i) layer.push_back({c.add_var(i), {}, {}});
  layer.push_back({c.add_const(BigInt(1)), {}, {}});
  U.layers.push_back(layer);

  // Layer 1: every multiset of 5 leaves, the constant 1 (position n) acting as padding.
  layer.clear();
  std::array<std::uint32_t, 5> m{n, n, n, n, n};
  auto emit_monomial = [&] {
    Exponents e(n, 0);
    std::array<std::uint32_t, 5> g{};
    for (std::size_t i = 0; i < 5; ++i) {
      if (m[i] < n) ++e[m[i]];
      g[i] = U.layers[0][m[i]].gate;
    }
    U.monomials.push_back(e);
    layer.push_back({product5(c, g), {m.begin(), m.end()}, {}});
  };
  // Non-increasing sequences over [0, n], starting from all-padding (the monomial 1).
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t pos, std::uint32_t hi) {
    if (pos == 5) {
      emit_monomial();
      return;
    }
    for (std::uint32_t v = hi + 1; v-- > 0;) {
      m[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, n);
  U.layers.push_back(layer);

  auto sum_layer = [&](std::size_t count) {
    const auto& below = U.layers.back();
    std::vector<UniversalNode> out;
    for (std::size_t g = 0; g < count; ++g) {
      UniversalNode node;
      std::uint32_t acc = 0;
      for (std::uint32_t i = 0; i < below.size(); ++i) {
        const std::uint32_t y = next_y++;
        const std::uint32_t term = c.add_mul(c.add_var(y), below[i].gate);
        acc = i == 0 ? term : c.add_add(acc, term);
        node.inputs.push_back(i);
        node.wires.push_back(y);
      }
      node.gate = acc;
      out.push_back(std::move(node));
    }
    U.layers.push_back(std::move(out));
  };

  for (std::uint32_t j = 1; j < k; ++j) {
    sum_layer(s);
    std::vector<UniversalNode> prods;
    std::vector<std::array<std::uint32_t, 5>> list;
    for_each_subset(s, [&](const std::array<std::uint32_t, 5>& idx) {
      std::array<std::uint32_t, 5> g{};
      for (std::size_t i = 0; i < 5; ++i) g[i] = U.layers.back()[idx[i]].gate;
      prods.push_back({product5(c, g), {idx.begin(), idx.end()}, {}});
      list.push_back(idx);
    });
    U.subsets.push_back(std::move(list));
    U.layers.push_back(std::move(prods));
  }
  sum_layer(1);
  c.set_output(U.layers.back().front().gate);
  U.y_count = next_y - n;
  if (U.y_count != ycount) throw Error("universal_build: y count mismatch");
  return U;
}

UniversalStats universal_check(const UniversalCircuit& U) {
  auto fail = [](const std::string& what) { throw PropertyViolation("universal circuit: " + what); };
  const Circuit& c = U.circuit;
  c.validate();
  const std::uint32_t k = U.product_layers();
  if (U.ell != 2 * k + 1 || U.layers.size() != U.ell) fail("layer count is not 2k + 1");
  if (saturating_pow(5, k) < U.d) fail("product layers cannot reach degree d");

  const auto& leaves = U.layers[0];
  if (leaves.size() != U.n + 1) fail("layer 0 must hold x_1..x_n and 1");
  for (std::uint32_t i = 0; i < U.n; ++i) {
    const Gate& g = c.gate(leaves[i].gate);
    if (g.op != GateOp::Var || g.lhs != i) fail("layer 0 variable out of place");
  }
  {
    const Gate& g = c.gate(leaves[U.n].gate);
    if (g.op != GateOp::Const || !constants_equal(c.constants()[g.lhs], Constant(BigInt(1))))
      fail("layer 0 must end with the constant 1");
  }

  // Leaves of the Mul tree rooted at gate, stopping at heads of the layer below.
  auto mul_leaves = [&](std::uint32_t gate, const std::map<std::uint32_t, std::uint32_t>& heads) {
    std::vector<std::uint32_t> out;
    std::function<void(std::uint32_t)> walk = [&](std::uint32_t g) {
      if (auto it = heads.find(g); it != heads.end()) {
        out.push_back(it->second);
        return;
      }
      if (c.gate(g).op != GateOp::Mul) fail("product node contains a non-product gate");
      walk(c.gate(g).lhs);
      walk(c.gate(g).rhs);
    };
    walk(gate);
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<bool> used_y(U.y_count, false);
  for (std::size_t li = 1; li < U.layers.size(); ++li) {
    std::map<std::uint32_t, std::uint32_t> heads;
    for (std::uint32_t i = 0; i < U.layers[li - 1].size(); ++i) heads.emplace(U.layers[li - 1][i].gate, i);
    const bool product = li % 2 == 1;
    for (const auto& node : U.layers[li]) {
      if (product) {
        auto got = mul_leaves(node.gate, heads);
        auto want = node.inputs;
        std::sort(want.begin(), want.end());
        if (got != want || want.size() != 5) fail("product node fan-in is not exactly 5 over the previous layer");
        if (li > 1 && std::adjacent_find(want.begin(), want.end()) != want.end())
          fail("product over a repeated sum gate");
      } else {
        // Add chain of Mul(Var y, input).
        std::vector<std::pair<std::uint32_t, std::uint32_t>> wires;
        std::function<void(std::uint32_t)> walk = [&](std::uint32_t g) {
          const Gate& gate = c.gate(g);
          if (gate.op == GateOp::Add) {
            walk(gate.lhs);
            walk(gate.rhs);
            return;
          }
          if (gate.op != GateOp::Mul || c.gate(gate.lhs).op != GateOp::Var) fail("sum node term is not y * input");
          const std::uint32_t y = c.gate(gate.lhs).lhs;
          auto it = heads.find(gate.rhs);
          if (y < U.n || it == heads.end()) fail("sum node wire is not labelled by y over the previous layer");
          wires.emplace_back(y, it->second);
        };
        walk(node.gate);
        if (wires.size() != U.layers[li - 1].size()) fail("sum node is not fully connected to the previous layer");
        for (std::size_t i = 0; i < wires.size(); ++i) {
          if (wires[i].first != node.wires[i] || wires[i].second != node.inputs[i]) fail("wire labels disagree");
          if (used_y[wires[i].first - U.n]) fail("y variable reused");
          used_y[wires[i].first - U.n] = true;
        }
      }
    }
  }
  if (U.layers.back().size() != 1 || U.layers.back().front().gate != c.output())
    fail("top layer must be the single output sum gate");
  if (U.layers[1].size() != binomial(U.n + 5, 5)) fail("layer 1 does not hold every monomial of degree <= 5");
  {
    std::set<Exponents> distinct(U.monomials.begin(), U.monomials.end());
    if (distinct.size() != U.monomials.size()) fail("layer 1 monomials are not unique");
  }
  for (std::size_t li = 3; li + 1 < U.layers.size(); li += 2)
    if (U.layers[li].size() != binomial(U.s, 5)) fail("product layer is not every 5-subset");
  for (std::size_t li = 2; li + 1 < U.layers.size(); li += 2)
    if (U.layers[li].size() != U.s) fail("sum layer width differs from s");

  UniversalStats st;
  st.size = c.size();
  std::vector<bool> xmask(c.num_vars(), false), ymask(c.num_vars(), false);
  for (std::uint32_t i = 0; i < c.num_vars(); ++i) (i < U.n ? xmask : ymask)[i] = true;
  st.x_degree = syntactic_degree_in(c, xmask);
  st.y_degree = syntactic_degree_in(c, ymask);
  st.y_count = U.y_count;
  const std::uint64_t ns = std::uint64_t{U.n} * U.s;
  st.size_bound = saturating_mul(U.ell, saturating_pow(ns, 5));
  st.degree_bound = saturating_pow(5, U.ell);
  st.y_bound = saturating_mul(U.ell, saturating_pow(ns, 6));
  if (st.size > st.size_bound) fail("size exceeds ell (n s)^5");
  if (st.x_degree > st.degree_bound) fail("x-degree exceeds 5^ell");
  if (st.y_degree > st.degree_bound) fail("y-degree exceeds 5^ell");
  if (st.y_count > st.y_bound) fail("y count exceeds ell (n s)^6");
  return st;
}

}  // namespace forge
