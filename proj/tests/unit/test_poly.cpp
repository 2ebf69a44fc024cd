#include <random>

#include "doctest.h"
#include "forge/coeff_vector.hpp"
#include "forge/field.hpp"
#include "support.hpp"

using namespace forge;

TEST_CASE("monomial order examples") {
  const MonomialOrder o(2, 2);
  CHECK(o.size() == 6);
  CHECK(o.index(Exponents{0, 0}) == 0);
  CHECK(o.index(Exponents{1, 0}) == 1);
  CHECK(o.index(Exponents{0, 1}) == 2);
  CHECK(o.index(Exponents{2, 0}) == 3);
  CHECK(o.index(Exponents{1, 1}) == 4);
  CHECK(o.index(Exponents{0, 2}) == 5);
  CHECK_THROWS_AS(o.index(Exponents{2, 1}), InvalidArgument);
  CHECK_THROWS_AS(o.index(Exponents{1}), InvalidArgument);
  CHECK_THROWS_AS(o.exponents(6), InvalidArgument);
}

TEST_CASE("monomial index is a bijection consistent with for_each") {
  for (auto [n, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {1, 5}, {2, 3}, {3, 4}, {4, 6}, {5, 5}, {6, 3}, {3, 20}, {10, 3}}) {
    const MonomialOrder o(n, d);
    REQUIRE(o.size() <= 10000);
    std::size_t expected = 0;
    Exponents prev;
    o.for_each([&](std::size_t idx, const Exponents& e) {
      REQUIRE(idx == expected++);
      REQUIRE(o.index(e) == idx);
      REQUIRE(o.exponents(idx) == e);
      if (!prev.empty()) {
        const auto dp = total_degree(prev), de = total_degree(e);
        REQUIRE((dp < de || (dp == de && prev > e)));
      }
      prev = e;
    });
    CHECK(expected == o.size());
  }
}

TEST_CASE("circuit_to_coeffs examples") {
  const IntegerRing Z;
  Circuit prod(2);
  prod.add_var(0);
  prod.add_var(1);
  prod.add_mul(0, 1);
  const auto v = circuit_to_coeffs(prod, Z, MonomialOrder(2, 2));
  CHECK(v.entries.size() == 1);
  CHECK(v.entries.at(4) == 1);

  Circuit diff(1);
  diff.add_var(0);
  diff.add_const(BigInt(1));
  diff.add_add(0, 1);
  diff.add_const(BigInt(-1));
  diff.add_add(0, 3);
  diff.add_mul(2, 4);
  const auto w = circuit_to_coeffs(diff, Z, MonomialOrder(1, 2));
  CHECK(w.entries.size() == 2);
  CHECK(w.entries.at(0) == -1);
  CHECK(w.entries.at(2) == 1);

  Circuit cube(1);
  cube.add_var(0);
  cube.add_mul(0, 0);
  cube.add_mul(1, 0);
  CHECK_THROWS_AS(circuit_to_coeffs(cube, Z, MonomialOrder(1, 2)), InvalidArgument);
}

TEST_CASE("poly_eval examples and linearity") {
  const IntegerRing Z;
  const MonomialOrder o(2, 1);
  IntVector zero{o, {}};
  const std::vector<BigInt> pt{3, 5};
  CHECK(poly_eval(Z, zero, std::span<const BigInt>(pt)) == 0);
  IntVector v{o, {{1, BigInt(1)}, {2, BigInt(-1)}}};
  CHECK(poly_eval(Z, v, std::span<const BigInt>(pt)) == -2);

  std::mt19937_64 rng(5);
  const MonomialOrder big(3, 3);
  for (int t = 0; t < 100; ++t) {
    IntVector a{big, {}}, b{big, {}};
    for (std::size_t i = 0; i < big.size(); ++i) {
      if (uniform_below(rng, 3) == 0) a.entries[i] = BigInt(static_cast<long>(uniform_below(rng, 11)) - 5);
      if (uniform_below(rng, 3) == 0) b.entries[i] = BigInt(static_cast<long>(uniform_below(rng, 11)) - 5);
    }
    std::erase_if(a.entries, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(b.entries, [](const auto& kv) { return kv.second == 0; });
    const std::vector<BigInt> x{BigInt(static_cast<long>(uniform_below(rng, 9)) - 4),
                                BigInt(static_cast<long>(uniform_below(rng, 9)) - 4),
                                BigInt(static_cast<long>(uniform_below(rng, 9)) - 4)};
    const std::span<const BigInt> sx(x);
    CHECK(poly_eval(Z, coeff_add(Z, a, b), sx) == poly_eval(Z, a, sx) + poly_eval(Z, b, sx));
  }
}

TEST_CASE("random circuits: evaluation matches expansion") {
  const IntegerRing Z;
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto c = test::random_circuit(rng, 3, 8);
    const auto p = expand(c, Z);
    const MonomialOrder o(3, std::max<std::uint32_t>(p.degree(), 0));
    const auto v = to_coeffs(p, o);
    const std::vector<BigInt> x{BigInt(static_cast<long>(uniform_below(rng, 7)) - 3),
                                BigInt(static_cast<long>(uniform_below(rng, 7)) - 3),
                                BigInt(static_cast<long>(uniform_below(rng, 7)) - 3)};
    CHECK(circuit_eval(c, Z, std::span<const BigInt>(x)) == poly_eval(Z, v, std::span<const BigInt>(x)));
  }
}

TEST_CASE("expansion with substitution") {
  const IntegerRing Z;
  Circuit c(3);
  c.add_var(0);
  c.add_var(2);
  c.add_mul(0, 1);
  c.add_var(1);
  c.add_add(2, 3);
  // x0 * 5 + x1 with x0 -> y0, x1 -> y1, x2 -> 5
  const std::vector<VarImage<BigInt>> images{std::uint32_t{0}, std::uint32_t{1}, BigInt(5)};
  const auto p = expand(c, Z, images, 2);
  CHECK(p.terms.size() == 2);
  CHECK(p.terms.at(Exponents{1, 0}) == 5);
  CHECK(p.terms.at(Exponents{0, 1}) == 1);
}

TEST_CASE("expansion respects the term budget") {
  const IntegerRing Z;
  Circuit c(4);
  for (std::uint32_t i = 0; i < 4; ++i) c.add_var(i);
  c.add_add(0, 1);
  c.add_add(4, 2);
  c.add_add(5, 3);
  std::uint32_t cur = 6;
  for (int k = 0; k < 4; ++k) cur = c.add_mul(cur, 6);
  CHECK_THROWS_AS(expand(c, Z, 50), BudgetExceeded);
  CHECK_NOTHROW(expand(c, Z, 1000));
}
