#include "doctest.h"
#include "forge/io.hpp"
#include "support.hpp"

using namespace forge;

namespace {

Circuit sample_circuit() {
  Circuit c(2);
  const auto x = c.add_var(0);
  const auto y = c.add_var(1);
  const auto k = c.add_const(BigInt(-3));
  c.add_mul(c.add_add(x, k), y);
  return c;
}

}  // namespace

TEST_CASE("json text is canonical") {
  const Json j{{"b", 1}, {"a", {2, 3}}};
  CHECK(dump(j) == "{\n  \"a\": [\n    2,\n    3\n  ],\n  \"b\": 1\n}\n");
  CHECK(parse_json(dump(j)) == j);
  CHECK_THROWS_AS(parse_json("{\"a\": "), InvalidArgument);
  CHECK_THROWS_AS(read_text_file("/nonexistent/forge/file"), InvalidArgument);
}

TEST_CASE("constants round trip") {
  const BigInt big("-123456789012345678901234567890");
  CHECK(constant_to_json(Constant(big)) == Json("-123456789012345678901234567890"));
  CHECK(constants_equal(constant_from_json(constant_to_json(Constant(big))), Constant(big)));
  const Constant digits = FieldDigits{{1, 0, 1}};
  CHECK(constant_to_json(digits) == Json({1, 0, 1}));
  CHECK(constants_equal(constant_from_json(Json({1, 0, 1})), digits));
  CHECK_THROWS_AS(constant_from_json(Json("12x")), InvalidArgument);
  CHECK_THROWS_AS(constant_from_json(Json::array()), InvalidArgument);
  CHECK_THROWS_AS(constant_from_json(Json(1.5)), InvalidArgument);
}

TEST_CASE("fields round trip") {
  for (auto [p, r] : {std::pair{2u, 1u}, {2u, 4u}, {3u, 2u}, {5u, 3u}}) {
    const auto F = FieldSpec::make(p, r);
    const auto G = field_from_json(field_to_json(F));
    CHECK(G.characteristic() == p);
    CHECK(G.degree() == r);
    CHECK(G.modulus() == F.modulus());
  }
  Json bad = field_to_json(FieldSpec::make(2, 4));
  bad["r"] = 3;
  CHECK_THROWS_AS(field_from_json(bad), InvalidArgument);
}

TEST_CASE("circuits round trip and reject malformed documents") {
  const Circuit c = sample_circuit();
  const Json j = circuit_to_json(c);
  CHECK(j["n"] == 2);
  CHECK(j["gates"][2] == Json{{"op", "const"}, {"value", "-3"}});
  CHECK(j["gates"][3] == Json{{"op", "add"}, {"args", {0, 2}}});
  const Circuit back = circuit_parse(j);
  CHECK(test::signature(back) == test::signature(c));
  CHECK(back.output() == c.output());

  Json fwd = j;
  fwd["gates"][3]["args"] = {0, 4};
  CHECK_THROWS_AS(circuit_parse(fwd), InvalidArgument);
  Json self = j;
  self["gates"][3]["args"] = {3, 0};
  CHECK_THROWS_AS(circuit_parse(self), InvalidArgument);
  Json op = j;
  op["gates"][3]["op"] = "sub";
  CHECK_THROWS_AS(circuit_parse(op), InvalidArgument);
  Json var = j;
  var["gates"][0]["arg"] = 7;
  CHECK_THROWS_AS(circuit_parse(var), InvalidArgument);
  Json missing = j;
  missing.erase("gates");
  CHECK_THROWS_AS(circuit_parse(missing), InvalidArgument);
}

TEST_CASE("random circuits round trip") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t n = 1 + rng() % 3;
    Circuit c(n);
    const int size = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < size; ++i) {
      const auto k = rng() % 4;
      if (i == 0 || k == 0)
        c.add_var(static_cast<std::uint32_t>(rng() % n));
      else if (k == 1)
        c.add_const(BigInt(static_cast<long>(rng() % 7) - 3));
      else if (k == 2)
        c.add_add(static_cast<std::uint32_t>(rng() % i), static_cast<std::uint32_t>(rng() % i));
      else
        c.add_mul(static_cast<std::uint32_t>(rng() % i), static_cast<std::uint32_t>(rng() % i));
    }
    const Circuit back = circuit_parse(parse_json(dump(circuit_to_json(c))));
    CHECK(test::signature(back) == test::signature(c));
  }
}

TEST_CASE("coefficient vectors round trip with carrier checks") {
  const MonomialOrder order(2, 2);
  IntVector v{order, {}};
  v.entries.emplace(0, BigInt(-1));
  v.entries.emplace(4, BigInt("99999999999999999999"));
  const Json j = coeffs_to_json(v);
  CHECK(j["carrier"] == "Z");
  CHECK(int_vector_from_json(j) == v);
  CHECK_THROWS_AS(field_vector_from_json(j, 2), CarrierMismatch);

  FieldVector f{order, {}};
  f.entries.emplace(1, 2u);
  f.entries.emplace(5, 1u);
  const Json jf = coeffs_to_json(f, 3);
  CHECK(jf["carrier"] == "F_3");
  CHECK(field_vector_from_json(jf, 3) == f);
  CHECK_THROWS_AS(field_vector_from_json(jf, 5), CarrierMismatch);
  CHECK_THROWS_AS(int_vector_from_json(jf), CarrierMismatch);

  Json dup = j;
  dup["entries"].push_back(dup["entries"][0]);
  CHECK_THROWS_AS(int_vector_from_json(dup), InvalidArgument);
  Json deep = j;
  deep["entries"][0]["exponents"] = {3, 0};
  CHECK_THROWS_AS(int_vector_from_json(deep), InvalidArgument);
}

TEST_CASE("classes and hitting sets round trip") {
  ClassParams p;
  p.mode = "ff";
  p.p = 2;
  p.r = 2;
  p.n = 2;
  p.d = 2;
  p.s = 3;
  const auto cls = enumerate_class_ff(p);
  const auto back = std::get<FieldClass>(class_from_json(parse_json(dump(class_to_json(cls)))));
  CHECK(back.members == cls.members);
  CHECK(back.circuits == cls.circuits);
  CHECK(back.params.s == 3);

  const auto K = FieldSpec::make(2, 2);
  const auto hs = greedy_hitting_set(cls, K);
  const auto hs_back = hitting_set_from_json(parse_json(dump(hitting_set_to_json(hs))));
  CHECK(hs_back.points == hs.points);
  CHECK(hs_back.field->modulus() == K.modulus());
  CHECK(dump(hitting_set_to_json(hs_back)) == dump(hitting_set_to_json(hs)));

  Json unsorted = class_to_json(cls);
  std::swap(unsorted["members"][0], unsorted["members"][1]);
  CHECK_THROWS_AS(class_from_json(unsorted), InvalidArgument);

  Json out_of_range = hitting_set_to_json(hs);
  out_of_range["points"][0][0] = 4;
  CHECK_THROWS_AS(hitting_set_from_json(out_of_range), InvalidArgument);

  ClassParams ip = p;
  ip.mode = "int";
  ip.delta = true;
  const auto icls = enumerate_class_int(ip);
  const auto iback = std::get<IntClass>(class_from_json(parse_json(dump(class_to_json(icls)))));
  CHECK(iback.members == icls.members);
  CHECK(iback.params.delta);
  const auto ihs = greedy_hitting_set(icls, 16);
  Json zero_coord = hitting_set_to_json(ihs);
  zero_coord["points"][0][0] = 0;
  CHECK_THROWS_AS(hitting_set_from_json(zero_coord), InvalidArgument);
  CHECK(hitting_set_from_json(hitting_set_to_json(ihs)).grid_bound == 16);
}
