#include "forge/poly_class.hpp"

#include "forge/field.hpp"

namespace forge {

std::vector<Constant> default_constants(const std::string& mode, std::uint32_t p) {
  if (mode == "int") return {BigInt(0), BigInt(1), BigInt(-1)};
  if (p <= 4) {
    std::vector<Constant> out;
    for (std::uint32_t c = 0; c < p; ++c) out.emplace_back(BigInt(c));
    return out;
  }
  return {BigInt(0), BigInt(1)};
}

void validate_class_params(const ClassParams& params) {
  if (params.mode != "ff" && params.mode != "int")
    throw InvalidArgument("mode must be 'ff' or 'int', got '" + params.mode + "'");
  if (params.n == 0) throw InvalidArgument("n must be >= 1");
  if (params.s == 0) throw InvalidArgument("s must be >= 1");
  if (params.mode == "ff") {
    if (params.delta) throw InvalidArgument("delta restriction applies to integer classes only");
    if (!is_prime(params.p)) throw InvalidArgument("p = " + std::to_string(params.p) + " is not prime");
    if (params.r == 0) throw InvalidArgument("r must be >= 1");
    const std::uint64_t q = saturating_pow(params.p, params.r);
    if (q < std::uint64_t{params.d} * params.d)
      throw InvalidArgument("extension field too small: q = " + std::to_string(q) + " < d^2 = " +
                            std::to_string(std::uint64_t{params.d} * params.d));
    for (const auto& c : params.constants.value_or(std::vector<Constant>{}))
      if (std::holds_alternative<FieldDigits>(c) && std::get<FieldDigits>(c).digits.size() > 1)
        throw CarrierMismatch("class constants must lie in the base field F_" + std::to_string(params.p));
  } else {
    for (const auto& c : params.constants.value_or(std::vector<Constant>{}))
      if (!std::holds_alternative<BigInt>(c)) throw CarrierMismatch("integer class with a field-element constant");
  }
}

namespace {

template <Ring R>
PolyClass<typename R::value_type> build_class(const ClassParams& params, const R& ring, bool delta,
                                              Parallelism par) {
  using V = typename R::value_type;
  validate_class_params(params);
  if (params.m != 0) throw InvalidArgument("m > 0 selects the definable class (enumerate_definable)");
  PolyClass<V> out;
  out.params = params;
  if (!out.params.constants) out.params.constants = default_constants(params.mode, params.p);
  out.order = MonomialOrder(params.n, params.d);
  EnumerationParams ep{params.n, params.s, *out.params.constants, std::numeric_limits<std::uint64_t>::max()};
  const MonomialOrder order = out.order;
  std::function<std::optional<CoeffVector<V>>(const SparsePoly<V>&)> transform =
      [&order, delta](const SparsePoly<V>& p) -> std::optional<CoeffVector<V>> {
    if (p.degree() > order.degree()) return std::nullopt;
    auto v = to_coeffs(p, order);
    if constexpr (std::is_same_v<V, BigInt>) {
      if (delta && !is_delta(v)) return std::nullopt;
    }
    return v;
  };
  out.members = enumerate_polys(ring, ep, transform, par, &out.circuits);
  CoeffVector<V> zero{out.order, {}};
  auto it = std::lower_bound(out.members.begin(), out.members.end(), zero);
  if (it == out.members.end() || !(*it == zero)) out.members.insert(it, zero);
  return out;
}

}  // namespace

FieldClass enumerate_class_ff(const ClassParams& params, Parallelism par) {
  if (params.mode != "ff") throw InvalidArgument("enumerate_class_ff: mode must be 'ff'");
  validate_class_params(params);
  return build_class(params, FieldSpec::make(params.p, 1), false, par);
}

IntClass enumerate_class_int(const ClassParams& params, Parallelism par) {
  if (params.mode != "int") throw InvalidArgument("enumerate_class_int: mode must be 'int'");
  return build_class(params, IntegerRing{}, params.delta, par);
}

}  // namespace forge
