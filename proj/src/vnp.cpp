#include "forge/vnp.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "forge/budget.hpp"

namespace forge {

void validate_definable(const DefinableSpec& spec) {
  if (spec.n == 0) throw InvalidArgument("definable: n must be >= 1");
  if (spec.g.num_vars() != spec.n + spec.m)
    throw InvalidArgument("definable: g must have n + m = " + std::to_string(spec.n + spec.m) + " variables");
  require_budget(spec.m, Budget::global().max_sum_vars, "summation variables m");
  spec.g.validate();
}

LinearMap linear_map(std::uint32_t n, std::uint32_t m, std::uint32_t src_degree, std::uint32_t dst_degree) {
  if (n == 0) throw InvalidArgument("linear_map: n must be >= 1");
  require_budget(m, Budget::global().max_sum_vars, "summation variables m");
  require_budget(binomial(n + m + src_degree, src_degree), Budget::global().max_terms, "linear map columns");
  LinearMap L;
  L.n = n;
  L.m = m;
  L.src = MonomialOrder(n + m, src_degree);
  L.dst = MonomialOrder(n, dst_degree);
  L.target.resize(L.src.size(), LinearMap::npos);
  L.weight.resize(L.src.size(), 0);
  L.src.for_each([&](std::size_t idx, const Exponents& e) {
    const Exponents x(e.begin(), e.begin() + n);
    std::uint32_t support = 0;
    for (std::uint32_t j = 0; j < m; ++j) support += e[n + j] > 0;
    L.weight[idx] = std::uint64_t{1} << (m - support);
    if (total_degree(x) <= dst_degree) L.target[idx] = L.dst.index(x);
  });
  return L;
}

std::shared_ptr<const LinearMap> linear_map_L(std::uint32_t n, std::uint32_t d, std::uint32_t s) {
  if (s < n) throw InvalidArgument("linear_map_L: s must be >= n");
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::shared_ptr<const LinearMap>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, d, s}];
  if (!slot) slot = std::make_shared<const LinearMap>(linear_map(n, s - n, s, d));
  return slot;
}

namespace {

template <class V>
CoeffVector<V> reindex(const CoeffVector<V>& v, const MonomialOrder& order) {
  CoeffVector<V> out{order, {}};
  for (const auto& [idx, c] : v.entries) out.entries.emplace(order.index(v.order.exponents(idx)), c);
  return out;
}

template <Ring R>
PolyClass<typename R::value_type> build_definable(const ClassParams& params, const R& ring, Parallelism par) {
  using V = typename R::value_type;
  validate_class_params(params);
  if (params.s != params.n + params.m)
    throw InvalidArgument("definable class needs s = n + m (s = " + std::to_string(params.s) +
                          ", n + m = " + std::to_string(params.n + params.m) + ")");
  PolyClass<V> out;
  out.params = params;
  if (!out.params.constants) out.params.constants = default_constants(params.mode, params.p);
  out.order = MonomialOrder(params.n, params.d);
  const std::uint32_t s = params.s;
  const auto L = linear_map(params.n, params.m, s, s);
  const MonomialOrder order = out.order;
  const bool delta = params.delta;
  std::function<std::optional<CoeffVector<V>>(const SparsePoly<V>&)> transform =
      [&](const SparsePoly<V>& g) -> std::optional<CoeffVector<V>> {
    if (g.degree() > s) return std::nullopt;
    const auto f = apply_L(L, ring, to_coeffs(g, L.src));
    if (coeff_degree(f) > order.degree()) return std::nullopt;
    auto v = reindex(f, order);
    if constexpr (std::is_same_v<V, BigInt>) {
      if (delta && !is_delta(v)) return std::nullopt;
    }
    return v;
  };
  EnumerationParams ep{params.n + params.m, s, *out.params.constants, std::numeric_limits<std::uint64_t>::max()};
  out.members = enumerate_polys(ring, ep, transform, par, &out.circuits);
  CoeffVector<V> zero{out.order, {}};
  auto it = std::lower_bound(out.members.begin(), out.members.end(), zero);
  if (it == out.members.end() || !(*it == zero)) out.members.insert(it, zero);
  return out;
}

template <class Greedy, class Random>
HittingSet vnp_hs(const std::string& strategy, std::uint64_t t, Greedy greedy, Random random) {
  if (strategy == "greedy") return greedy();
  if (strategy == "random") {
    auto res = random(t);
    if (res.counterexample)
      throw PropertyViolation("random hitting set misses class member " + std::to_string(*res.counterexample));
    return res.hs;
  }
  throw InvalidArgument("strategy must be 'greedy' or 'random', got '" + strategy + "'");
}

}  // namespace

FieldClass enumerate_definable_ff(const ClassParams& params, Parallelism par) {
  if (params.mode != "ff") throw InvalidArgument("enumerate_definable_ff: mode must be 'ff'");
  if (params.m == 0) return enumerate_class_ff(params, par);
  validate_class_params(params);
  return build_definable(params, FieldSpec::make(params.p, 1), par);
}

IntClass enumerate_definable_int(const ClassParams& params, Parallelism par) {
  if (params.mode != "int") throw InvalidArgument("enumerate_definable_int: mode must be 'int'");
  if (params.m == 0) return enumerate_class_int(params, par);
  return build_definable(params, IntegerRing{}, par);
}

HittingSet vnp_hitting_set(const FieldClass& cls, const std::string& strategy, std::uint64_t t, std::uint64_t seed,
                           Parallelism par) {
  const auto K = FieldSpec::make(cls.params.p, cls.params.r);
  auto hs = vnp_hs(
      strategy, t, [&] { return greedy_hitting_set(cls, K, par, seed); },
      [&](std::uint64_t count) { return random_hitting_set(cls, K, count, seed, par); });
  if (strategy == "greedy" && cls.params.m > 0 && hs.points.size() > definable_hitting_set_size_bound(cls.params.s))
    throw PropertyViolation("greedy hitting set of size " + std::to_string(hs.points.size()) +
                            " exceeds ceil(2s(3 log s + 4)) = " + std::to_string(definable_hitting_set_size_bound(cls.params.s)));
  return hs;
}

HittingSet vnp_hitting_set(const IntClass& cls, const std::string& strategy, std::uint64_t t, std::uint64_t seed,
                           Parallelism par) {
  const std::uint64_t B = vnp_grid_bound(cls.params.s, cls.params.d);
  return vnp_hs(
      strategy, t, [&] { return greedy_hitting_set(cls, B, par, seed); },
      [&](std::uint64_t count) { return random_hitting_set(cls, B, count, seed, par); });
}

}  // namespace forge
