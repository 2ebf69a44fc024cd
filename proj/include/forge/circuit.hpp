#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "forge/error.hpp"
#include "forge/ring.hpp"

namespace forge {

enum class GateOp : std::uint8_t { Var, Const, Add, Mul };

/// Var: lhs is the variable index. Const: lhs indexes the constant pool.
/// Add/Mul: lhs, rhs are earlier gate indices.
struct Gate {
  GateOp op = GateOp::Var;
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Single-output fan-in-2 algebraic circuit with gates in topological order.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::uint32_t num_vars) : n_(num_vars) {}

  std::uint32_t num_vars() const { return n_; }
  std::size_t size() const { return gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(std::size_t i) const { return gates_[i]; }
  const std::vector<Constant>& constants() const { return pool_; }
  std::uint32_t output() const;

  std::uint32_t add_var(std::uint32_t index);
  std::uint32_t add_const(const Constant& value);
  std::uint32_t add_add(std::uint32_t lhs, std::uint32_t rhs);
  std::uint32_t add_mul(std::uint32_t lhs, std::uint32_t rhs);
  void set_output(std::uint32_t gate);
  /// Removes the last gate; the output is reset to the new last gate.
  void pop_back();

  /// Checks arity, references and the output index.
  void validate() const;

 private:
  std::uint32_t push(Gate g);

  std::uint32_t n_ = 0;
  std::vector<Gate> gates_;
  std::vector<Constant> pool_;
  std::int64_t out_ = -1;
};

/// Var 1, Const 0, Add max, Mul sum; per gate.
std::vector<std::uint64_t> gate_degrees(const Circuit& c);
std::uint64_t syntactic_degree(const Circuit& c);
/// Syntactic degree counting only the variables with mask[i] set.
std::uint64_t syntactic_degree_in(const Circuit& c, const std::vector<bool>& mask);

/// For every gate, the index of the last gate reading it (or the gate itself).
std::vector<std::uint32_t> last_uses(const Circuit& c);

template <Ring R>
typename R::value_type circuit_eval(const Circuit& c, const R& ring, std::span<const typename R::value_type> point) {
  using V = typename R::value_type;
  if (point.size() != c.num_vars())
    throw InvalidArgument("circuit_eval: point has " + std::to_string(point.size()) + " coordinates, circuit has " +
                          std::to_string(c.num_vars()) + " variables");
  if (c.size() == 0) throw InvalidArgument("circuit_eval: empty circuit");
  std::vector<V> consts;
  consts.reserve(c.constants().size());
  for (const auto& k : c.constants()) consts.push_back(ring.from_constant(k));
  const auto last = last_uses(c);
  const std::uint32_t out = c.output();
  std::vector<V> val(c.size());
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    switch (g.op) {
      case GateOp::Var: val[i] = point[g.lhs]; break;
      case GateOp::Const: val[i] = consts[g.lhs]; break;
      case GateOp::Add: val[i] = ring.add(val[g.lhs], val[g.rhs]); break;
      case GateOp::Mul: val[i] = ring.mul(val[g.lhs], val[g.rhs]); break;
    }
    if (g.op == GateOp::Add || g.op == GateOp::Mul) {
      if (last[g.lhs] == i && g.lhs != out) val[g.lhs] = V{};
      if (last[g.rhs] == i && g.rhs != out) val[g.rhs] = V{};
    }
  }
  return val[out];
}

}  // namespace forge
