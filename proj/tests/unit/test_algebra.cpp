#include <random>
#include <set>

#include "doctest.h"
#include "forge/bigint.hpp"
#include "forge/budget.hpp"
#include "forge/error.hpp"
#include "forge/field.hpp"

using namespace forge;

namespace {

using Poly = std::vector<std::uint32_t>;

Poly multiply(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return out;
}

std::vector<Poly> monic_of_degree(std::uint32_t p, std::uint32_t deg) {
  std::vector<Poly> out;
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= p;
  for (std::uint64_t k = 0; k < count; ++k) {
    Poly f(deg + 1, 0);
    f[deg] = 1;
    std::uint64_t v = k;
    for (std::uint32_t i = 0; i < deg; ++i, v /= p) f[i] = static_cast<std::uint32_t>(v % p);
    out.push_back(f);
  }
  return out;
}

// Oracle: sieve out every product of two monic factors, then take the
// candidate with smallest value read from the top coefficient down.
Poly least_irreducible_by_sieve(std::uint32_t p, std::uint32_t r) {
  std::set<Poly> reducible;
  for (std::uint32_t i = 1; i <= r / 2; ++i)
    for (const auto& a : monic_of_degree(p, i))
      for (const auto& b : monic_of_degree(p, r - i)) reducible.insert(multiply(a, b, p));
  for (const auto& f : monic_of_degree(p, r))
    if (!reducible.count(f)) return f;
  return {};
}

FieldElem random_elem(const FieldSpec& f, std::mt19937_64& rng) {
  return f.element_at(std::uniform_int_distribution<std::uint64_t>(0, f.order() - 1)(rng));
}

FieldElem t_power(const FieldSpec& f, std::uint32_t k) {
  std::vector<std::uint32_t> d(k + 1, 0);
  d[k] = 1;
  return f.element(d);
}

}  // namespace

TEST_CASE("ff_make picks the least irreducible modulus") {
  CHECK(FieldSpec::make(2, 1).modulus() == Poly{0, 1});
  CHECK(FieldSpec::make(2, 4).modulus() == Poly{1, 1, 0, 0, 1});
  CHECK(FieldSpec::make(3, 2).modulus() == Poly{1, 0, 1});
  CHECK(FieldSpec::make(2, 2).modulus() == Poly{1, 1, 1});
  CHECK(FieldSpec::make(2, 4).order() == 16);
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 8}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}}) {
    CAPTURE(p);
    CAPTURE(r);
    CHECK(FieldSpec::make(p, r).modulus() == least_irreducible_by_sieve(p, r));
  }
}

TEST_CASE("ff_make rejects bad parameters") {
  CHECK_THROWS_AS(FieldSpec::make(4, 1), InvalidArgument);
  CHECK_THROWS_AS(FieldSpec::make(1, 1), InvalidArgument);
  CHECK_THROWS_AS(FieldSpec::make(2, 0), InvalidArgument);
  CHECK_THROWS_AS(FieldSpec::make(2, 21), BudgetExceeded);
  CHECK_THROWS_AS(FieldSpec::with_modulus(2, {1, 0, 1}), InvalidArgument);
}

TEST_CASE("field arithmetic examples") {
  const auto f2 = FieldSpec::make(2, 1);
  CHECK(f2.add(f2.one(), f2.one()) == f2.zero());
  const auto f16 = FieldSpec::make(2, 4);
  CHECK(f16.mul(t_power(f16, 1), t_power(f16, 3)) == f16.element(std::vector<std::uint32_t>{1, 1}));
  const auto f3 = FieldSpec::make(3, 1);
  CHECK(f3.pow(f3.from_int(2), 2) == f3.one());
  CHECK(f3.from_int(-1) == f3.from_int(2));
  CHECK_THROWS_AS(f16.inv(f16.zero()), InvalidArgument);
  CHECK_THROWS_AS(f16.check(FieldElem{16}), CarrierMismatch);
  CHECK_THROWS_AS(f3.from_constant(FieldDigits{{1, 1}}), CarrierMismatch);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {2, 1}, {3, 1}, {13, 1}, {2, 4}, {3, 2}, {2, 8}, {5, 3}, {2, 17}, {3, 11}}) {
    const auto f = FieldSpec::make(p, r);
    CAPTURE(f.name());
    for (int trial = 0; trial < 1000; ++trial) {
      const auto a = random_elem(f, rng), b = random_elem(f, rng), c = random_elem(f, rng);
      REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      REQUIRE(f.add(a, b) == f.add(b, a));
      REQUIRE(f.mul(a, b) == f.mul(b, a));
      REQUIRE(f.add(a, f.neg(a)) == f.zero());
      REQUIRE(f.sub(f.add(a, b), b) == a);
      REQUIRE(f.mul(a, b) == f.mul_reference(a, b));
      if (!f.is_zero(a)) REQUIRE(f.mul(a, f.inv(a)) == f.one());
    }
    for (int trial = 0; trial < 100; ++trial) {
      auto a = random_elem(f, rng);
      if (f.is_zero(a)) a = f.one();
      REQUIRE(f.pow(a, f.order() - 1) == f.one());
    }
  }
}

TEST_CASE("log tables agree with reference multiplication exhaustively") {
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 4}, {3, 2}, {2, 8}, {5, 2}}) {
    const auto f = FieldSpec::make(p, r);
    for (std::uint64_t i = 0; i < f.order(); ++i)
      for (std::uint64_t j = 0; j < f.order(); ++j)
        REQUIRE(f.mul(f.element_at(i), f.element_at(j)) == f.mul_reference(f.element_at(i), f.element_at(j)));
  }
}

TEST_CASE("phi projections") {
  const auto f4 = FieldSpec::make(2, 2);
  const auto t = t_power(f4, 1);
  CHECK(f4.project(t, 1) == 0);
  CHECK(f4.project(t, 2) == 1);
  CHECK(f4.project(f4.zero(), 1) == 0);
  CHECK(f4.project(f4.zero(), 2) == 0);
  CHECK_THROWS_AS(f4.project(t, 0), InvalidArgument);
  CHECK_THROWS_AS(f4.project(t, 3), InvalidArgument);

  std::mt19937_64 rng(11);
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 4}, {3, 3}, {5, 2}, {2, 8}}) {
    const auto f = FieldSpec::make(p, r);
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_elem(f, rng), b = random_elem(f, rng);
      for (std::uint32_t i = 1; i <= r; ++i)
        REQUIRE(f.project(f.add(a, b), i) == (f.project(a, i) + f.project(b, i)) % p);
    }
    if (f.order() <= 256) {
      std::set<std::vector<std::uint32_t>> seen;
      for (std::uint64_t k = 0; k < f.order(); ++k) {
        std::vector<std::uint32_t> phi;
        for (std::uint32_t i = 1; i <= r; ++i) phi.push_back(f.project(f.element_at(k), i));
        seen.insert(phi);
      }
      CHECK(seen.size() == f.order());
    }
  }
}

TEST_CASE("bigint helpers") {
  CHECK(parse_bigint("-12345678901234567890") + 1 == BigInt("-12345678901234567889"));
  CHECK_THROWS_AS(parse_bigint("12a"), InvalidArgument);
  CHECK_THROWS_AS(parse_bigint(""), InvalidArgument);
  CHECK(mod_floor(BigInt(-7), 3) == 2);
  CHECK(ceil_log2(BigInt(49)) == 6);
  CHECK(ceil_log2(BigInt(64)) == 6);
  CHECK(ceil_log2(BigInt(65)) == 7);
  CHECK(bit_length(BigInt(0)) == 0);
  const BigRat q = make_rational(BigInt(6), BigInt(-4));
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK_THROWS_AS(make_rational(BigInt(1), BigInt(0)), InvalidArgument);
}

TEST_CASE("budget parsing") {
  const auto b = Budget::parse("terms=5,field_size=1024");
  CHECK(b.max_terms == 5);
  CHECK(b.max_field_size == 1024);
  CHECK_THROWS_AS(Budget::parse("bogus=1"), InvalidArgument);
  CHECK_THROWS_AS(Budget::parse("terms"), InvalidArgument);
  CHECK_THROWS_AS(require_budget(11, 10, "x"), BudgetExceeded);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, 7) == 0);
}
