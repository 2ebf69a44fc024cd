#include <random>
#include <set>

#include "doctest.h"
#include "forge/field.hpp"
#include "forge/universal.hpp"
#include "support.hpp"

using namespace forge;

using test::Term;
using test::sum_circuit;
using test::product_of_sums;

TEST_CASE("universal circuit for one variable and degree one") {
  const auto U = universal_build(1, 1, 2);
  CHECK(U.ell == 3);
  REQUIRE(U.layers.size() == 3);
  CHECK(U.layers[0].size() == 2);
  CHECK(U.layers[1].size() == 6);
  CHECK(U.layers[2].size() == 1);
  std::set<Exponents> monos(U.monomials.begin(), U.monomials.end());
  CHECK(monos == std::set<Exponents>{{0}, {1}, {2}, {3}, {4}, {5}});
  CHECK(U.monomials.front() == Exponents{0});
  CHECK(U.circuit.size() == 43);
  const auto st = universal_check(U);
  CHECK(st.size <= st.size_bound);
  CHECK(st.size_bound == 96);
  CHECK(st.x_degree == 5);
  CHECK(st.y_degree == 1);
  CHECK(st.y_count == 6);
}

TEST_CASE("universal circuit bounds") {
  const auto U = universal_build(2, 4, 3);
  CHECK(U.circuit.size() == 149);
  const auto st = universal_check(U);
  CHECK(st.size <= st.size_bound);
  CHECK(st.x_degree <= st.degree_bound);
  CHECK(st.y_degree <= st.degree_bound);
  CHECK(st.y_count <= st.y_bound);

  const auto deep = universal_build(1, 6, 6);
  CHECK(deep.ell == 5);
  const auto sd = universal_check(deep);
  CHECK(sd.x_degree == 25);
  CHECK(sd.y_degree == 6);
  CHECK(deep.layers[2].size() == 6);
  CHECK(deep.layers[3].size() == 6);

  CHECK_THROWS_AS(universal_build(0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(universal_build(1, 6, 4), InvalidArgument);
  CHECK_THROWS_AS(universal_build(6, 30, 30), BudgetExceeded);
}

TEST_CASE("universal_check rejects a tampered circuit") {
  auto U = universal_build(1, 1, 2);
  std::swap(U.layers[1][0], U.layers[1][1]);
  U.layers[2][0].inputs = {0, 1, 2, 3, 4, 5};
  U.layers[2][0].wires[0] = U.layers[2][0].wires[1];
  CHECK_THROWS_AS(universal_check(U), PropertyViolation);
}

TEST_CASE("universal embedding examples") {
  const IntegerRing Z;
  const auto U = universal_build(2, 4, 3);
  Circuit zero(2);
  zero.set_output(zero.add_const(BigInt(0)));
  const auto a0 = universal_embed(U, zero, Z);
  CHECK(std::all_of(a0.begin(), a0.end(), [](const BigInt& v) { return v == 0; }));

  const auto xy = sum_circuit(2, {{1, {0, 1}}});
  const auto a = universal_embed(U, xy, Z);
  CHECK(std::count_if(a.begin(), a.end(), [](const BigInt& v) { return v != 0; }) == 1);
  CHECK(universal_specialize(U, Z, a) == expand(xy, Z));

  const auto wide = sum_circuit(2, {{1, {0, 0, 0, 1, 1, 1}}});
  CHECK_THROWS_AS(universal_embed(U, wide, Z), NotEmbeddable);
  const auto deep = product_of_sums(2, {{1, {{{1, {0}}, {1, {}}}, {{1, {1}}, {1, {}}}}}});
  CHECK_THROWS_AS(universal_embed(U, deep, Z), NotEmbeddable);
  Circuit other(3);
  other.set_output(other.add_var(2));
  CHECK_THROWS_AS(universal_embed(U, other, Z), NotEmbeddable);
}

TEST_CASE("universal embedding round trips") {
  const IntegerRing Z;
  const auto f5 = FieldSpec::make(5, 1);
  const auto shallow = universal_build(2, 4, 3);
  const auto deep = universal_build(2, 6, 8);
  std::vector<std::pair<const UniversalCircuit*, Circuit>> cases{
      {&shallow, sum_circuit(2, {{1, {0, 0, 1}}, {3, {0}}, {-2, {}}})},
      {&shallow, sum_circuit(2, {{4, {0, 0, 0, 0, 1}}, {1, {1, 1}}, {-1, {1, 1}}})},
      {&deep, product_of_sums(2, {{1, {{{1, {0}}, {1, {}}}, {{1, {1}}, {1, {}}}}}})},
      {&deep, product_of_sums(2, {{1, {{{1, {0}}, {1, {1}}}, {{1, {0}}, {1, {1}}}, {{1, {0}}, {1, {}}}}}})},
      {&deep, product_of_sums(2, {{1, {{{1, {0, 0, 0}}, {0, {}}}, {{1, {0, 0, 0}}, {0, {}}}}}, {2, {{{1, {1}}}}}})},
      {&deep, sum_circuit(2, {{1, {0, 1}}, {-1, {}}})},
  };
  for (const auto& [U, target] : cases) {
    const auto a = universal_embed(*U, target, Z);
    CHECK(universal_specialize(*U, Z, a) == expand(target, Z));
    const auto b = universal_embed(*U, target, f5);
    CHECK(universal_specialize(*U, f5, b) == expand(target, f5));
  }

  std::mt19937_64 rng(17);
  auto random_sum = [&] {
    std::vector<Term> terms;
    const std::size_t count = 1 + uniform_below(rng, 3);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<std::uint32_t> leaves;
      const std::size_t deg = uniform_below(rng, 3);
      for (std::size_t j = 0; j < deg; ++j) leaves.push_back(static_cast<std::uint32_t>(uniform_below(rng, 2)));
      terms.emplace_back(static_cast<long>(uniform_below(rng, 5)) - 2, leaves);
    }
    return terms;
  };
  for (int t = 0; t < 30; ++t) {
    std::vector<std::pair<long, std::vector<std::vector<Term>>>> prods;
    const std::size_t count = 1 + uniform_below(rng, 2);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<std::vector<Term>> sums;
      const std::size_t factors = 1 + uniform_below(rng, 2);
      for (std::size_t j = 0; j < factors; ++j) sums.push_back(random_sum());
      prods.emplace_back(static_cast<long>(uniform_below(rng, 7)) - 3, sums);
    }
    const auto target = product_of_sums(2, prods);
    const auto a = universal_embed(deep, target, Z);
    CHECK(universal_specialize(deep, Z, a) == expand(target, Z));
  }
}
