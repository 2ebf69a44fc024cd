#include "forge/io.hpp"

#include <fstream>
#include <sstream>

namespace forge {

namespace {

const Json& at(const Json& j, const char* key) {
  if (!j.is_object()) throw InvalidArgument(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(std::string("missing key '") + key + "'");
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return at(j, key).get<T>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("key '") + key + "': " + e.what());
  }
}

BigInt bigint_from_string(const std::string& s) {
  const bool neg = !s.empty() && s[0] == '-';
  if (s.size() == (neg ? 1u : 0u) || s.find_first_not_of("0123456789", neg ? 1 : 0) != std::string::npos)
    throw InvalidArgument("not a decimal integer: '" + s + "'");
  return BigInt(s);
}

std::uint32_t carrier_prime(const std::string& carrier) {
  if (carrier.rfind("F_", 0) != 0 || carrier.find('^') != std::string::npos)
    throw CarrierMismatch("carrier '" + carrier + "' is not a prime field F_p");
  try {
    return static_cast<std::uint32_t>(std::stoul(carrier.substr(2)));
  } catch (const std::exception&) {
    throw CarrierMismatch("carrier '" + carrier + "' is not a prime field F_p");
  }
}

Json entries_json(const MonomialOrder& order, const auto& entries, const auto& value) {
  Json out = Json::array();
  for (const auto& [idx, c] : entries) out.push_back({{"exponents", order.exponents(idx)}, {"value", value(c)}});
  return out;
}

template <class V, class Parse>
std::map<std::size_t, V> entries_from_json(const Json& list, const MonomialOrder& order, Parse parse) {
  if (!list.is_array()) throw InvalidArgument("entries must be an array");
  std::map<std::size_t, V> out;
  for (const auto& e : list) {
    const auto exps = get<Exponents>(e, "exponents");
    if (exps.size() != order.num_vars()) throw InvalidArgument("exponent vector has the wrong length");
    if (total_degree(exps) > order.degree()) throw InvalidArgument("entry exceeds degree d");
    V v = parse(at(e, "value"));
    if (!out.emplace(order.index(exps), v).second) throw InvalidArgument("duplicate monomial in entries");
  }
  return out;
}

MonomialOrder order_from_json(const Json& j) {
  const auto n = get<std::uint32_t>(j, "n");
  const auto d = get<std::uint32_t>(j, "d");
  return MonomialOrder(n, d);
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path)); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

Json constant_to_json(const Constant& c) {
  if (const auto* b = std::get_if<BigInt>(&c)) return to_string(*b);
  return std::get<FieldDigits>(c).digits;
}

Constant constant_from_json(const Json& j) {
  if (j.is_string()) return bigint_from_string(j.get<std::string>());
  if (j.is_array()) {
    FieldDigits d;
    for (const auto& x : j) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() > 0xffffffffLL) throw InvalidArgument("field digits must be non-negative integers");
      d.digits.push_back(x.get<std::uint32_t>());
    }
    if (d.digits.empty()) throw InvalidArgument("empty field digit array");
    return d;
  }
  throw InvalidArgument("unknown constant encoding (expected decimal string or digit array)");
}

Json field_to_json(const FieldSpec& F) {
  return {{"p", F.characteristic()}, {"r", F.degree()}, {"modulus", F.modulus()}};
}

FieldSpec field_from_json(const Json& j) {
  const auto p = get<std::uint32_t>(j, "p");
  const auto r = get<std::uint32_t>(j, "r");
  const auto modulus = get<std::vector<std::uint32_t>>(j, "modulus");
  auto F = FieldSpec::with_modulus(p, modulus);
  if (F.degree() != r) throw InvalidArgument("field: r does not match the modulus degree");
  return F;
}

Json circuit_to_json(const Circuit& c) {
  Json gates = Json::array();
  for (const auto& g : c.gates()) {
    switch (g.op) {
      case GateOp::Var: gates.push_back({{"op", "var"}, {"arg", g.lhs}}); break;
      case GateOp::Const: gates.push_back({{"op", "const"}, {"value", constant_to_json(c.constants()[g.lhs])}}); break;
      case GateOp::Add: gates.push_back({{"op", "add"}, {"args", {g.lhs, g.rhs}}}); break;
      case GateOp::Mul: gates.push_back({{"op", "mul"}, {"args", {g.lhs, g.rhs}}}); break;
    }
  }
  return {{"n", c.num_vars()}, {"gates", gates}, {"out", c.output()}};
}

Circuit circuit_parse(const Json& j) {
  Circuit c(get<std::uint32_t>(j, "n"));
  const Json& gates = at(j, "gates");
  if (!gates.is_array()) throw InvalidArgument("gates must be an array");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Json& g = gates[i];
    const auto op = get<std::string>(g, "op");
    try {
      if (op == "var") {
        c.add_var(get<std::uint32_t>(g, "arg"));
      } else if (op == "const") {
        c.add_const(constant_from_json(at(g, "value")));
      } else if (op == "add" || op == "mul") {
        const auto args = get<std::vector<std::uint32_t>>(g, "args");
        if (args.size() != 2) throw InvalidArgument("expected exactly two args");
        if (args[0] >= i || args[1] >= i) throw InvalidArgument("forward reference");
        op == "add" ? c.add_add(args[0], args[1]) : c.add_mul(args[0], args[1]);
      } else {
        throw InvalidArgument("unknown op '" + op + "'");
      }
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("gate " + std::to_string(i) + ": " + e.what());
    }
  }
  c.set_output(get<std::uint32_t>(j, "out"));
  c.validate();
  return c;
}

Json coeffs_to_json(const IntVector& v) {
  return {{"n", v.order.num_vars()},
          {"d", v.order.degree()},
          {"carrier", "Z"},
          {"entries", entries_json(v.order, v.entries, [](const BigInt& c) { return to_string(c); })}};
}

Json coeffs_to_json(const FieldVector& v, std::uint32_t p) {
  return {{"n", v.order.num_vars()},
          {"d", v.order.degree()},
          {"carrier", "F_" + std::to_string(p)},
          {"entries", entries_json(v.order, v.entries, [](const FieldElem& c) { return std::vector{c.packed}; })}};
}

IntVector int_vector_from_json(const Json& j) {
  if (get<std::string>(j, "carrier") != "Z") throw CarrierMismatch("expected an integer coefficient vector");
  const auto order = order_from_json(j);
  IntVector v{order, entries_from_json<BigInt>(at(j, "entries"), order, [](const Json& x) {
                return bigint_from_string(x.get<std::string>());
              })};
  std::erase_if(v.entries, [](const auto& e) { return sgn(e.second) == 0; });
  return v;
}

FieldVector field_vector_from_json(const Json& j, std::uint32_t p) {
  if (carrier_prime(get<std::string>(j, "carrier")) != p)
    throw CarrierMismatch("coefficient vector is not over F_" + std::to_string(p));
  const auto order = order_from_json(j);
  FieldVector v{order, entries_from_json<FieldElem>(at(j, "entries"), order, [p](const Json& x) {
                  const auto digits = x.get<std::vector<std::uint32_t>>();
                  if (digits.size() != 1 || digits[0] >= p) throw InvalidArgument("bad F_p coefficient");
                  return FieldElem{digits[0]};
                })};
  std::erase_if(v.entries, [](const auto& e) { return e.second.packed == 0; });
  return v;
}

Json params_to_json(const ClassParams& params) {
  Json j{{"mode", params.mode}, {"n", params.n}, {"d", params.d}, {"s", params.s}, {"m", params.m}};
  if (params.mode == "ff") {
    j["p"] = params.p;
    j["r"] = params.r;
  } else {
    j["delta"] = params.delta;
  }
  Json consts = Json::array();
  for (const auto& c : params.constants.value_or(default_constants(params.mode, params.p)))
    consts.push_back(constant_to_json(c));
  j["constants"] = consts;
  return j;
}

ClassParams params_from_json(const Json& j) {
  ClassParams p;
  p.mode = get<std::string>(j, "mode");
  p.n = get<std::uint32_t>(j, "n");
  p.d = get<std::uint32_t>(j, "d");
  p.s = get<std::uint32_t>(j, "s");
  p.m = get<std::uint32_t>(j, "m");
  if (p.mode == "ff") {
    p.p = get<std::uint32_t>(j, "p");
    p.r = get<std::uint32_t>(j, "r");
  } else {
    p.delta = get<bool>(j, "delta");
  }
  std::vector<Constant> consts;
  for (const auto& c : at(j, "constants")) consts.push_back(constant_from_json(c));
  p.constants = consts;
  validate_class_params(p);
  return p;
}

namespace {

template <class Class, class Enc>
Json class_json(const Class& cls, const std::string& carrier, Enc enc) {
  Json members = Json::array();
  for (const auto& f : cls.members) members.push_back(enc(f)["entries"]);
  return {{"kind", "class"},
          {"mode", cls.params.mode},
          {"params", params_to_json(cls.params)},
          {"n", cls.order.num_vars()},
          {"d", cls.order.degree()},
          {"carrier", carrier},
          {"circuits", cls.circuits},
          {"members", members}};
}

}  // namespace

Json class_to_json(const FieldClass& cls) {
  const std::uint32_t p = cls.params.p;
  return class_json(cls, "F_" + std::to_string(p), [p](const FieldVector& f) { return coeffs_to_json(f, p); });
}

Json class_to_json(const IntClass& cls) {
  return class_json(cls, "Z", [](const IntVector& f) { return coeffs_to_json(f); });
}

std::variant<FieldClass, IntClass> class_from_json(const Json& j) {
  if (get<std::string>(j, "kind") != "class") throw InvalidArgument("not a class file");
  const ClassParams params = params_from_json(at(j, "params"));
  const auto order = order_from_json(j);
  if (order.num_vars() != params.n || order.degree() != params.d)
    throw InvalidArgument("class file: n/d disagree with params");
  const auto carrier = get<std::string>(j, "carrier");
  auto fill = [&](auto cls, auto parse) {
    cls.params = params;
    cls.order = order;
    cls.circuits = get<std::uint64_t>(j, "circuits");
    for (const auto& m : at(j, "members"))
      cls.members.push_back(parse(Json{{"n", order.num_vars()}, {"d", order.degree()}, {"carrier", carrier}, {"entries", m}}));
    if (!std::is_sorted(cls.members.begin(), cls.members.end()) ||
        std::adjacent_find(cls.members.begin(), cls.members.end()) != cls.members.end())
      throw InvalidArgument("class members are not sorted and distinct");
    return cls;
  };
  if (params.mode == "ff")
    return fill(FieldClass{}, [&](const Json& m) { return field_vector_from_json(m, params.p); });
  return fill(IntClass{}, [](const Json& m) { return int_vector_from_json(m); });
}

Json hitting_set_to_json(const HittingSet& hs) {
  Json j{{"kind", "hitting_set"}, {"mode", hs.mode},          {"n", hs.n},           {"d", hs.d},
         {"points", hs.points},   {"strategy", hs.strategy}, {"seed", hs.seed},     {"verified", hs.verified}};
  if (hs.mode == "ff") {
    j["field"] = field_to_json(*hs.field);
    j["base_p"] = hs.base_p;
  } else {
    j["grid_bound"] = hs.grid_bound;
  }
  return j;
}

HittingSet hitting_set_from_json(const Json& j) {
  if (get<std::string>(j, "kind") != "hitting_set") throw InvalidArgument("not a hitting-set file");
  HittingSet hs;
  hs.mode = get<std::string>(j, "mode");
  hs.n = get<std::uint32_t>(j, "n");
  hs.d = get<std::uint32_t>(j, "d");
  hs.points = get<std::vector<std::vector<std::uint64_t>>>(j, "points");
  hs.strategy = get<std::string>(j, "strategy");
  hs.seed = get<std::uint64_t>(j, "seed");
  hs.verified = get<bool>(j, "verified");
  std::uint64_t axis = 0;
  if (hs.mode == "ff") {
    hs.field = field_from_json(at(j, "field"));
    hs.base_p = get<std::uint32_t>(j, "base_p");
    if (hs.base_p != hs.field->characteristic()) throw InvalidArgument("hitting set: base_p differs from char K");
    axis = hs.field->order();
  } else if (hs.mode == "int") {
    hs.grid_bound = get<std::uint64_t>(j, "grid_bound");
    axis = hs.grid_bound;
  } else {
    throw InvalidArgument("hitting set: unknown mode '" + hs.mode + "'");
  }
  for (const auto& a : hs.points) {
    if (a.size() != hs.n) throw InvalidArgument("hitting set: point of the wrong dimension");
    for (auto c : a)
      if (hs.mode == "ff" ? c >= axis : (c < 1 || c > axis)) throw InvalidArgument("hitting set: coordinate out of range");
  }
  return hs;
}

}  // namespace forge
