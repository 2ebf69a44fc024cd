#include <map>
#include <set>

#include "doctest.h"
#include "forge/hitting.hpp"
#include "support.hpp"

using namespace forge;

namespace {

// Dense oracle over F_p in n <= 2 variables: coefficient grid
// [e1][e2] with exponents up to `cap`, arithmetic done by hand.
using Dense = std::vector<std::vector<std::uint32_t>>;

Dense dense_mul(const Dense& a, const Dense& b, std::uint32_t p, std::uint32_t cap) {
  Dense out(cap + 1, std::vector<std::uint32_t>(cap + 1, 0));
  for (std::uint32_t i = 0; i <= cap; ++i)
    for (std::uint32_t j = 0; j <= cap; ++j)
      if (a[i][j])
        for (std::uint32_t k = 0; i + k <= cap; ++k)
          for (std::uint32_t l = 0; j + l <= cap; ++l) out[i + k][j + l] = (out[i + k][j + l] + a[i][j] * b[k][l]) % p;
  return out;
}

std::size_t oracle_class_size(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t s,
                              const std::vector<Constant>& consts) {
  const std::uint32_t cap = 1u << s;
  std::set<Dense> seen;
  seen.insert(Dense(cap + 1, std::vector<std::uint32_t>(cap + 1, 0)));
  for (const auto& c : test::naive_circuits(n, s, consts)) {
    std::vector<Dense> val;
    for (const auto& g : c.gates()) {
      Dense v(cap + 1, std::vector<std::uint32_t>(cap + 1, 0));
      switch (g.op) {
        case GateOp::Var:
          (g.lhs == 0 ? v[1][0] : v[0][1]) = 1;
          break;
        case GateOp::Const:
          v[0][0] = static_cast<std::uint32_t>(mod_floor(std::get<BigInt>(c.constants()[g.lhs]), p));
          break;
        case GateOp::Add:
          for (std::uint32_t i = 0; i <= cap; ++i)
            for (std::uint32_t j = 0; j <= cap; ++j) v[i][j] = (val[g.lhs][i][j] + val[g.rhs][i][j]) % p;
          break;
        case GateOp::Mul: v = dense_mul(val[g.lhs], val[g.rhs], p, cap); break;
      }
      val.push_back(v);
    }
    const Dense& f = val.back();
    bool ok = true;
    for (std::uint32_t i = 0; i <= cap; ++i)
      for (std::uint32_t j = 0; j <= cap; ++j)
        if (f[i][j] && i + j > d) ok = false;
    if (ok) seen.insert(f);
  }
  return seen.size();
}

FieldClass hand_class(std::uint32_t n, std::uint32_t d, const std::vector<std::map<std::size_t, std::uint32_t>>& polys) {
  FieldClass cls;
  cls.params.mode = "ff";
  cls.params.p = 2;
  cls.params.n = n;
  cls.params.d = d;
  cls.order = MonomialOrder(n, d);
  for (const auto& p : polys) {
    FieldVector v{cls.order, {}};
    for (auto [idx, c] : p) v.entries[idx] = FieldElem{c};
    cls.members.push_back(v);
  }
  return cls;
}

}  // namespace

TEST_CASE("enumerate_class examples") {
  ClassParams params;
  params.mode = "ff";
  params.p = 2;
  params.n = 1;
  params.d = 1;
  params.s = 1;
  params.constants = std::vector<Constant>{BigInt(1)};
  const auto cls = enumerate_class_ff(params);
  REQUIRE(cls.members.size() == 3);
  CHECK(cls.members[0].is_zero());
  CHECK(cls.members[1].entries == std::map<std::size_t, FieldElem>{{0, FieldElem{1}}});
  CHECK(cls.members[2].entries == std::map<std::size_t, FieldElem>{{1, FieldElem{1}}});

  ClassParams ip;
  ip.mode = "int";
  ip.n = 1;
  ip.d = 1;
  ip.s = 2;
  ip.delta = true;
  ip.constants = std::vector<Constant>{};
  const auto dcls = enumerate_class_int(ip);
  for (const auto& m : dcls.members) CHECK(is_delta(m));
  CHECK(dcls.members.size() == 2);  // 0 and x; x + x is filtered out
  ip.delta = false;
  CHECK(enumerate_class_int(ip).members.size() == 3);
}

TEST_CASE("class size matches a dense recount") {
  for (auto [s, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {3, 3}, {4, 2}}) {
    ClassParams params;
    params.mode = "ff";
    params.p = 2;
    params.r = 4;
    params.n = 2;
    params.d = d;
    params.s = s;
    const auto cls = enumerate_class_ff(params);
    CHECK(cls.members.size() == oracle_class_size(2, 2, d, s, *cls.params.constants));
  }
  ClassParams p3;
  p3.mode = "ff";
  p3.p = 3;
  p3.r = 2;
  p3.n = 2;
  p3.d = 2;
  p3.s = 3;
  const auto cls3 = enumerate_class_ff(p3);
  CHECK(cls3.members.size() == oracle_class_size(3, 2, 2, 3, *cls3.params.constants));
}

TEST_CASE("class enumeration is thread-independent") {
  ClassParams params;
  params.mode = "int";
  params.n = 2;
  params.d = 2;
  params.s = 4;
  params.delta = true;
  const auto a = enumerate_class_int(params, {1});
  const auto b = enumerate_class_int(params, {3});
  const auto c = enumerate_class_int(params, {8});
  CHECK(a.members == b.members);
  CHECK(a.members == c.members);
  CHECK(a.circuits == c.circuits);
}

TEST_CASE("class parameter validation") {
  ClassParams params;
  params.mode = "ff";
  params.p = 4;
  CHECK_THROWS_AS(enumerate_class_ff(params), InvalidArgument);
  params.p = 2;
  params.r = 1;
  params.d = 2;
  CHECK_THROWS_AS(enumerate_class_ff(params), InvalidArgument);
  params.mode = "bogus";
  CHECK_THROWS_AS(enumerate_class_ff(params), InvalidArgument);
}

TEST_CASE("greedy examples") {
  const auto f2 = FieldSpec::make(2, 1);
  const auto x = hand_class(1, 1, {{{1, 1}}});
  const auto hx = greedy_hitting_set(x, f2);
  REQUIRE(hx.points.size() == 1);
  CHECK(hx.points[0] == std::vector<std::uint64_t>{1});
  CHECK(hx.verified);

  const auto two = hand_class(1, 1, {{{1, 1}}, {{0, 1}, {1, 1}}});
  const auto h2 = greedy_hitting_set(two, f2);
  REQUIRE(h2.points.size() == 2);
  CHECK(h2.points[0] == std::vector<std::uint64_t>{0});
  CHECK(h2.points[1] == std::vector<std::uint64_t>{1});

  const auto sq = hand_class(1, 2, {{{1, 1}, {2, 1}}});
  CHECK_THROWS_AS(greedy_hitting_set(sq, f2), InvalidArgument);  // q = 2 < d^2
}

TEST_CASE("greedy on enumerated classes") {
  ClassParams params;
  params.mode = "ff";
  params.p = 2;
  params.r = 2;
  params.n = 2;
  params.d = 2;
  params.s = 4;
  const auto cls = enumerate_class_ff(params);
  const auto K = FieldSpec::make(2, 2);
  const auto h1 = greedy_hitting_set(cls, K, {1});
  const auto h4 = greedy_hitting_set(cls, K, {4});
  CHECK(h1.points == h4.points);
  CHECK(h1.verified);
  CHECK(!verify_hitting_set(h1, cls));
  CHECK(h1.points.size() <= hitting_set_size_bound(2, 4));

  ClassParams ip;
  ip.mode = "int";
  ip.n = 2;
  ip.d = 2;
  ip.s = 3;
  ip.delta = true;
  const auto icls = enumerate_class_int(ip);
  const auto hi = greedy_hitting_set(icls, 4);
  CHECK(hi.verified);
  for (const auto& pt : hi.points)
    for (auto c : pt) CHECK((c >= 1 && c <= 4));
}

TEST_CASE("grid insufficiency is reported with the member") {
  // Over Z with B = 1 every point is (1, 1); x1 - x2 vanishes there.
  IntClass cls;
  cls.params.mode = "int";
  cls.params.n = 2;
  cls.params.d = 1;
  cls.order = MonomialOrder(2, 1);
  cls.members.push_back(IntVector{cls.order, {{1, BigInt(1)}, {2, BigInt(-1)}}});
  try {
    greedy_hitting_set(cls, 1);
    FAIL("expected GridInsufficient");
  } catch (const GridInsufficient& e) {
    CHECK(e.member() == 0);
  }
}

TEST_CASE("random hitting sets") {
  ClassParams params;
  params.mode = "ff";
  params.p = 2;
  params.r = 3;
  params.n = 2;
  params.d = 2;
  params.s = 4;
  const auto cls = enumerate_class_ff(params);
  const auto K = FieldSpec::make(2, 3);
  const auto full = random_hitting_set(cls, K, 64, 1);
  CHECK(full.hs.points.size() == 64);
  CHECK(full.hs.verified);
  const auto a = random_hitting_set(cls, K, 8, 42);
  const auto b = random_hitting_set(cls, K, 8, 42);
  CHECK(a.hs.points == b.hs.points);
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) ok += random_hitting_set(cls, K, 2 * params.s, seed).hs.verified;
  CHECK(ok >= 90);
}

TEST_CASE("verify_hitting_set") {
  const auto cls = hand_class(1, 1, {{}, {{1, 1}}});
  HittingSet empty;
  empty.mode = "ff";
  empty.field = FieldSpec::make(2, 1);
  empty.n = 1;
  empty.d = 1;
  CHECK(verify_hitting_set(empty, cls) == std::optional<std::size_t>(1));
  HittingSet full = empty;
  full.points = {{0}, {1}};
  CHECK(!verify_hitting_set(full, cls));
}

TEST_CASE("pit_zero_count") {
  const MonomialOrder o(2, 2);
  const std::vector<BigInt> S{0, 1, 2};
  CHECK(pit_zero_count(IntVector{o, {{4, BigInt(1)}}}, S) == 5);
  CHECK(pit_zero_count(IntVector{o, {}}, S) == 9);
  const MonomialOrder o1(1, 1);
  const std::vector<BigInt> S01{0, 1};
  CHECK(pit_zero_count(IntVector{o1, {{0, BigInt(-1)}, {1, BigInt(1)}}}, S01) == 1);
  const auto K = FieldSpec::make(2, 4);
  std::vector<FieldElem> SK;
  for (std::uint64_t k = 0; k < 5; ++k) SK.push_back(K.element_at(k));
  // x1^2 + x1 x2 over F_2
  CHECK(pit_zero_count(FieldVector{o, {{3, FieldElem{1}}, {4, FieldElem{1}}}}, K, SK) <= 2 * 5);
}

TEST_CASE("eval cache matches direct monomial evaluation") {
  const auto K = FieldSpec::make(3, 3);
  const MonomialOrder o(3, 4);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint64_t> pt{uniform_below(rng, 27), uniform_below(rng, 27), uniform_below(rng, 27)};
    const auto values = monomial_values(K, o, pt);
    const std::size_t m = uniform_below(rng, o.size());
    const auto e = o.exponents(m);
    FieldElem direct = K.one();
    for (std::size_t k = 0; k < 3; ++k) direct = K.mul(direct, K.pow(K.element_at(pt[k]), e[k]));
    CHECK(values[m] == direct);
    const auto ivalues = monomial_values(o, pt);
    BigInt idirect = 1;
    for (std::size_t k = 0; k < 3; ++k) idirect *= pow(BigInt(std::to_string(pt[k])), e[k]);
    CHECK(ivalues[m] == idirect);
  }
}

TEST_CASE("size and grid bounds") {
  CHECK(hitting_set_size_bound(2, 5) == 97);
  CHECK(definable_hitting_set_size_bound(4) == 80);
  CHECK(vp_grid_bound(4, 2) == 64);
  CHECK(vnp_grid_bound(4, 2) == 24);
}
