#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "forge/budget.hpp"
#include "forge/circuit.hpp"

namespace forge {

struct EnumerationParams {
  std::uint32_t n = 1;
  std::uint32_t s = 1;
  std::vector<Constant> constants;
  std::uint64_t degree_cap = std::numeric_limits<std::uint64_t>::max();
};

/// Canonical enumeration of all single-output fan-in-2 circuits with at most
/// s gates. A circuit is a gate sequence whose last gate is the output. At
/// position k the choices are, in order: Var(0..n-1), the constants in menu
/// order, Add(i, j) and then Mul(i, j) for i <= j < k in lexicographic order.
/// Circuits are visited in pre-order of the choice tree.
class CircuitEnumerator {
 public:
  explicit CircuitEnumerator(EnumerationParams params);

  const EnumerationParams& params() const { return params_; }
  std::uint64_t choices_at(std::uint32_t k) const;
  /// Number of circuits visited (before the degree cap), saturating.
  std::uint64_t count() const;
  /// Throws BudgetExceeded when count() exceeds the limit.
  void check_budget(std::uint64_t limit = Budget::global().max_circuits) const;

  void apply(Circuit& c, std::uint64_t choice) const;

  /// Depth of the prefixes distributed among partitions.
  std::uint32_t split_depth() const { return params_.s < 2 ? params_.s : 2; }

  /// Visitor needs push(const Circuit&), emit(const Circuit&) and pop().
  /// push/pop bracket every visited circuit; emit fires for circuits within
  /// the degree cap. Partition `part` of `parts` visits the subtrees below
  /// every parts-th prefix of length split_depth(); shorter circuits are
  /// emitted by partition 0 only. parts = 1 is the canonical sequential order.
  template <class Visitor>
  void run(Visitor& visitor, std::size_t part = 0, std::size_t parts = 1) const {
    Circuit c(params_.n);
    std::vector<std::uint64_t> deg;
    std::uint64_t prefix_counter = 0;
    recurse(visitor, c, deg, part, parts, prefix_counter);
  }

 private:
  template <class Visitor>
  void recurse(Visitor& visitor, Circuit& c, std::vector<std::uint64_t>& deg, std::size_t part, std::size_t parts,
               std::uint64_t& prefix_counter) const {
    const auto depth = static_cast<std::uint32_t>(c.size());
    if (depth == params_.s) return;
    const std::uint64_t choices = choices_at(depth);
    const std::uint32_t split = split_depth();
    for (std::uint64_t choice = 0; choice < choices; ++choice) {
      if (depth + 1 == split && (prefix_counter++ % parts) != part) continue;
      apply(c, choice);
      const Gate& g = c.gate(depth);
      switch (g.op) {
        case GateOp::Var: deg.push_back(1); break;
        case GateOp::Const: deg.push_back(0); break;
        case GateOp::Add: deg.push_back(std::max(deg[g.lhs], deg[g.rhs])); break;
        case GateOp::Mul: deg.push_back(saturating_add(deg[g.lhs], deg[g.rhs])); break;
      }
      visitor.push(static_cast<const Circuit&>(c));
      const bool mine = depth + 1 >= split || part == 0;
      if (mine && deg.back() <= params_.degree_cap) visitor.emit(static_cast<const Circuit&>(c));
      recurse(visitor, c, deg, part, parts, prefix_counter);
      visitor.pop();
      deg.pop_back();
      c.pop_back();
    }
  }

  EnumerationParams params_;
};

/// All emitted circuits in canonical order.
std::vector<Circuit> circuit_enumerate(const EnumerationParams& params);

}  // namespace forge
