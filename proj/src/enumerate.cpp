#include "forge/enumerate.hpp"

#include "forge/error.hpp"

namespace forge {

CircuitEnumerator::CircuitEnumerator(EnumerationParams params) : params_(std::move(params)) {
  if (params_.s == 0) throw InvalidArgument("circuit_enumerate: s must be >= 1");
  for (std::size_t i = 0; i < params_.constants.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (constants_equal(params_.constants[i], params_.constants[j]))
        throw InvalidArgument("circuit_enumerate: duplicate constant " + describe(params_.constants[i]));
  if (params_.n + params_.constants.size() == 0)
    throw InvalidArgument("circuit_enumerate: no variables and no constants");
}

std::uint64_t CircuitEnumerator::choices_at(std::uint32_t k) const {
  const std::uint64_t leaves = params_.n + params_.constants.size();
  const std::uint64_t pairs = std::uint64_t{k} * (k + 1) / 2;
  return leaves + 2 * pairs;
}

std::uint64_t CircuitEnumerator::count() const {
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (std::uint32_t k = 0; k < params_.s; ++k) {
    level = saturating_mul(level, choices_at(k));
    total = saturating_add(total, level);
  }
  return total;
}

void CircuitEnumerator::check_budget(std::uint64_t limit) const {
  require_budget(count(), limit, "circuit enumeration count");
}

void CircuitEnumerator::apply(Circuit& c, std::uint64_t choice) const {
  const auto k = static_cast<std::uint32_t>(c.size());
  if (choice < params_.n) {
    c.add_var(static_cast<std::uint32_t>(choice));
    return;
  }
  choice -= params_.n;
  if (choice < params_.constants.size()) {
    c.add_const(params_.constants[choice]);
    return;
  }
  choice -= params_.constants.size();
  const std::uint64_t pairs = std::uint64_t{k} * (k + 1) / 2;
  const bool mul = choice >= pairs;
  if (mul) choice -= pairs;
  // Pairs (i, j), i <= j < k, in lexicographic order.
  std::uint32_t i = 0;
  while (choice >= k - i) {
    choice -= k - i;
    ++i;
  }
  const auto j = static_cast<std::uint32_t>(i + choice);
  if (mul)
    c.add_mul(i, j);
  else
    c.add_add(i, j);
}

std::vector<Circuit> circuit_enumerate(const EnumerationParams& params) {
  CircuitEnumerator en(params);
  en.check_budget();
  struct Collect {
    std::vector<Circuit> out;
    void push(const Circuit&) {}
    void emit(const Circuit& c) { out.push_back(c); }
    void pop() {}
  } collect;
  en.run(collect);
  return std::move(collect.out);
}

}  // namespace forge
