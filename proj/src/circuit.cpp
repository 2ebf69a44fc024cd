#include "forge/circuit.hpp"

#include <algorithm>

#include "forge/budget.hpp"

namespace forge {

std::uint32_t Circuit::output() const {
  if (out_ < 0) throw InvalidArgument("circuit has no output gate");
  return static_cast<std::uint32_t>(out_);
}

std::uint32_t Circuit::push(Gate g) {
  gates_.push_back(g);
  out_ = static_cast<std::int64_t>(gates_.size()) - 1;
  return static_cast<std::uint32_t>(out_);
}

std::uint32_t Circuit::add_var(std::uint32_t index) {
  if (index >= n_)
    throw InvalidArgument("variable index " + std::to_string(index) + " out of range for " + std::to_string(n_) +
                          " variables");
  return push({GateOp::Var, index, 0});
}

std::uint32_t Circuit::add_const(const Constant& value) {
  auto it = std::find_if(pool_.begin(), pool_.end(), [&](const Constant& c) { return constants_equal(c, value); });
  std::uint32_t slot = static_cast<std::uint32_t>(it - pool_.begin());
  if (it == pool_.end()) pool_.push_back(value);
  return push({GateOp::Const, slot, 0});
}

std::uint32_t Circuit::add_add(std::uint32_t lhs, std::uint32_t rhs) {
  if (lhs >= gates_.size() || rhs >= gates_.size()) throw InvalidArgument("add gate references a later gate");
  return push({GateOp::Add, lhs, rhs});
}

std::uint32_t Circuit::add_mul(std::uint32_t lhs, std::uint32_t rhs) {
  if (lhs >= gates_.size() || rhs >= gates_.size()) throw InvalidArgument("mul gate references a later gate");
  return push({GateOp::Mul, lhs, rhs});
}

void Circuit::set_output(std::uint32_t gate) {
  if (gate >= gates_.size()) throw InvalidArgument("output gate " + std::to_string(gate) + " out of range");
  out_ = gate;
}

void Circuit::pop_back() {
  gates_.pop_back();
  out_ = static_cast<std::int64_t>(gates_.size()) - 1;
}

void Circuit::validate() const {
  if (gates_.empty()) throw InvalidArgument("circuit has no gates");
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    switch (g.op) {
      case GateOp::Var:
        if (g.lhs >= n_) throw InvalidArgument("gate " + std::to_string(i) + ": variable index out of range");
        break;
      case GateOp::Const:
        if (g.lhs >= pool_.size()) throw InvalidArgument("gate " + std::to_string(i) + ": unknown constant");
        break;
      case GateOp::Add:
      case GateOp::Mul:
        if (g.lhs >= i || g.rhs >= i)
          throw InvalidArgument("gate " + std::to_string(i) + ": forward reference (cycle or dangling input)");
        break;
    }
  }
  if (out_ < 0 || static_cast<std::size_t>(out_) >= gates_.size()) throw InvalidArgument("output gate out of range");
}

std::vector<std::uint64_t> gate_degrees(const Circuit& c) {
  std::vector<std::uint64_t> deg(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    switch (g.op) {
      case GateOp::Var: deg[i] = 1; break;
      case GateOp::Const: deg[i] = 0; break;
      case GateOp::Add: deg[i] = std::max(deg[g.lhs], deg[g.rhs]); break;
      case GateOp::Mul: deg[i] = saturating_add(deg[g.lhs], deg[g.rhs]); break;
    }
  }
  return deg;
}

std::uint64_t syntactic_degree(const Circuit& c) {
  if (c.size() == 0) return 0;
  return gate_degrees(c)[c.output()];
}

std::uint64_t syntactic_degree_in(const Circuit& c, const std::vector<bool>& mask) {
  if (c.size() == 0) return 0;
  std::vector<std::uint64_t> deg(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    switch (g.op) {
      case GateOp::Var: deg[i] = (g.lhs < mask.size() && mask[g.lhs]) ? 1 : 0; break;
      case GateOp::Const: deg[i] = 0; break;
      case GateOp::Add: deg[i] = std::max(deg[g.lhs], deg[g.rhs]); break;
      case GateOp::Mul: deg[i] = saturating_add(deg[g.lhs], deg[g.rhs]); break;
    }
  }
  return deg[c.output()];
}

std::vector<std::uint32_t> last_uses(const Circuit& c) {
  std::vector<std::uint32_t> last(c.size());
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    last[i] = i;
    const Gate& g = c.gate(i);
    if (g.op == GateOp::Add || g.op == GateOp::Mul) {
      last[g.lhs] = i;
      last[g.rhs] = i;
    }
  }
  return last;
}

}  // namespace forge
