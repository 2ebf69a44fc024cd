#include <algorithm>
#include <set>

#include "doctest.h"
#include "forge/coeff_vector.hpp"
#include "forge/enumerate.hpp"
#include "forge/field.hpp"
#include "support.hpp"

using namespace forge;
using forge::test::signature;

TEST_CASE("circuit construction and validation") {
  Circuit c(2);
  c.add_var(0);
  c.add_var(1);
  c.add_mul(0, 1);
  CHECK(c.size() == 3);
  CHECK(c.output() == 2);
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(c.add_add(2, 3), InvalidArgument);
  CHECK_THROWS_AS(c.add_var(2), InvalidArgument);
  CHECK_THROWS_AS(Circuit(1).validate(), InvalidArgument);
  c.add_const(BigInt(5));
  c.add_const(BigInt(5));
  CHECK(c.constants().size() == 1);
}

TEST_CASE("circuit_eval examples") {
  Circuit prod(2);
  prod.add_var(0);
  prod.add_var(1);
  prod.add_mul(0, 1);
  const IntegerRing Z;
  const std::vector<BigInt> pt{2, 3};
  CHECK(circuit_eval(prod, Z, std::span<const BigInt>(pt)) == 6);

  Circuit twice(1);
  twice.add_var(0);
  twice.add_add(0, 0);
  const auto f2 = FieldSpec::make(2, 1);
  const std::vector<FieldElem> one{f2.one()};
  CHECK(circuit_eval(twice, f2, std::span<const FieldElem>(one)) == f2.zero());

  const std::vector<BigInt> bad{1};
  CHECK_THROWS_AS(circuit_eval(prod, Z, std::span<const BigInt>(bad)), InvalidArgument);

  Circuit field_const(1);
  field_const.add_const(FieldDigits{{0, 1}});
  const std::vector<BigInt> x{1};
  CHECK_THROWS_AS(circuit_eval(field_const, Z, std::span<const BigInt>(x)), CarrierMismatch);
}

TEST_CASE("syntactic degree") {
  Circuit c(1);
  c.add_var(0);
  CHECK(syntactic_degree(c) == 1);
  c.add_mul(0, 0);
  CHECK(syntactic_degree(c) == 2);
  c.add_const(BigInt(3));
  c.add_add(1, 2);
  CHECK(syntactic_degree(c) == 2);
  CHECK(syntactic_degree_in(c, {false}) == 0);
}

TEST_CASE("enumeration examples") {
  const auto leaves = circuit_enumerate({1, 1, {BigInt(0), BigInt(1)}});
  REQUIRE(leaves.size() == 3);
  CHECK(signature(leaves[0]) == "v0 ");
  CHECK(signature(leaves[1]) == "c0 ");
  CHECK(signature(leaves[2]) == "c1 ");

  const auto two = circuit_enumerate({1, 2, {}});
  std::set<std::string> sigs;
  for (const auto& c : two) sigs.insert(signature(c));
  CHECK(sigs.count("v0 a0,0 "));
  CHECK(sigs.count("v0 m0,0 "));
  CHECK(two.size() == 1 + 3);
}

TEST_CASE("enumeration count matches a naive generator") {
  for (auto [n, s, consts] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::vector<Constant>>>{
           {1, 3, {BigInt(1)}}, {2, 3, {BigInt(0), BigInt(1)}}, {1, 4, {}}, {2, 2, {BigInt(0), BigInt(1), BigInt(-1)}}}) {
    const auto fast = circuit_enumerate({n, s, consts});
    const auto naive = test::naive_circuits(n, s, consts);
    CHECK(fast.size() == naive.size());
    CHECK(CircuitEnumerator({n, s, consts}).count() == naive.size());
    std::multiset<std::string> a, b;
    for (const auto& c : fast) a.insert(signature(c));
    for (const auto& c : naive) b.insert(signature(c));
    CHECK(a == b);
  }
}

TEST_CASE("partitioned enumeration covers the sequential order exactly once") {
  const EnumerationParams params{2, 4, {BigInt(1)}};
  CircuitEnumerator en(params);
  struct Collect {
    std::vector<std::string> out;
    void push(const Circuit&) {}
    void emit(const Circuit& c) { out.push_back(signature(c)); }
    void pop() {}
  };
  Collect seq;
  en.run(seq);
  for (std::size_t parts : {2u, 3u, 8u}) {
    std::vector<std::string> merged;
    for (std::size_t part = 0; part < parts; ++part) {
      Collect c;
      en.run(c, part, parts);
      merged.insert(merged.end(), c.out.begin(), c.out.end());
    }
    auto a = seq.out, b = merged;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("degree cap skips emission only") {
  EnumerationParams params{1, 3, {}};
  params.degree_cap = 1;
  for (const auto& c : circuit_enumerate(params)) CHECK(syntactic_degree(c) <= 1);
  CHECK(circuit_enumerate(params).size() < circuit_enumerate({1, 3, {}}).size());
}

TEST_CASE("enumerated circuits agree with their expansions") {
  const IntegerRing Z;
  const auto circuits = circuit_enumerate({2, 3, {BigInt(0), BigInt(1), BigInt(-1)}});
  std::mt19937_64 rng(3);
  for (const auto& c : circuits) {
    const auto p = expand(c, Z);
    CHECK(p.degree() <= syntactic_degree(c));
    const MonomialOrder order(2, static_cast<std::uint32_t>(syntactic_degree(c)));
    const auto v = circuit_to_coeffs(c, Z, order);
    const std::vector<BigInt> zero{0, 0};
    auto it = v.entries.find(0);
    CHECK(circuit_eval(c, Z, std::span<const BigInt>(zero)) == (it == v.entries.end() ? BigInt(0) : it->second));
    for (int t = 0; t < 100; ++t) {
      const std::vector<BigInt> pt{BigInt(static_cast<long>(uniform_below(rng, 41)) - 20),
                                   BigInt(static_cast<long>(uniform_below(rng, 41)) - 20)};
      REQUIRE(circuit_eval(c, Z, std::span<const BigInt>(pt)) == poly_eval(Z, v, std::span<const BigInt>(pt)));
    }
  }
  const auto f3 = FieldSpec::make(3, 2);
  for (const auto& c : circuit_enumerate({2, 3, {BigInt(1), BigInt(2)}})) {
    const MonomialOrder order(2, static_cast<std::uint32_t>(syntactic_degree(c)));
    const auto v = circuit_to_coeffs(c, f3, order);
    for (std::uint64_t a = 0; a < 9; ++a)
      for (std::uint64_t b = 0; b < 9; ++b) {
        const std::vector<FieldElem> pt{f3.element_at(a), f3.element_at(b)};
        REQUIRE(circuit_eval(c, f3, std::span<const FieldElem>(pt)) ==
                poly_eval(f3, v, std::span<const FieldElem>(pt)));
      }
  }
}
