#include "forge/hitting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <unordered_set>

#include "forge/rng.hpp"

namespace forge {

std::uint64_t Grid::size() const { return saturating_pow(axis, n); }

std::vector<std::uint64_t> Grid::point(std::uint64_t index) const {
  std::vector<std::uint64_t> out(n);
  for (std::uint32_t k = n; k-- > 0;) {
    out[k] = index % axis;
    index /= axis;
  }
  if (mode == "int")
    for (auto& c : out) c += 1;
  return out;
}

Grid ff_grid(const FieldSpec& K, std::uint32_t n) { return {"ff", K.order(), n}; }

Grid int_grid(std::uint64_t B, std::uint32_t n) {
  if (B == 0) throw InvalidArgument("grid bound must be >= 1");
  return {"int", B, n};
}

std::vector<std::uint64_t> sample_indices(std::uint64_t size, std::uint64_t t, std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  if (t >= size) {
    out.resize(size);
    for (std::uint64_t i = 0; i < size; ++i) out[i] = i;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  // Floyd's sampling: t distinct values from [0, size).
  for (std::uint64_t j = size - t; j < size; ++j) {
    const std::uint64_t v = uniform_below(rng, j + 1);
    chosen.insert(chosen.count(v) ? j : v);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FieldElem> monomial_values(const FieldSpec& K, const MonomialOrder& order,
                                       std::span<const std::uint64_t> point) {
  if (point.size() != order.num_vars()) throw InvalidArgument("point dimension does not match n");
  std::vector<std::vector<FieldElem>> powers(order.num_vars());
  for (std::uint32_t k = 0; k < order.num_vars(); ++k) {
    const FieldElem a = K.element_at(point[k]);
    powers[k].push_back(K.one());
    for (std::uint32_t j = 0; j < order.degree(); ++j) powers[k].push_back(K.mul(powers[k].back(), a));
  }
  std::vector<FieldElem> out(order.size());
  order.for_each([&](std::size_t idx, const Exponents& e) {
    FieldElem v = K.one();
    for (std::uint32_t k = 0; k < e.size(); ++k) v = K.mul(v, powers[k][e[k]]);
    out[idx] = v;
  });
  return out;
}

std::vector<BigInt> monomial_values(const MonomialOrder& order, std::span<const std::uint64_t> point) {
  if (point.size() != order.num_vars()) throw InvalidArgument("point dimension does not match n");
  std::vector<std::vector<BigInt>> powers(order.num_vars());
  for (std::uint32_t k = 0; k < order.num_vars(); ++k) {
    const BigInt a(std::to_string(point[k]));
    powers[k].push_back(1);
    for (std::uint32_t j = 0; j < order.degree(); ++j) powers[k].push_back(powers[k].back() * a);
  }
  std::vector<BigInt> out(order.size());
  order.for_each([&](std::size_t idx, const Exponents& e) {
    BigInt v = 1;
    for (std::uint32_t k = 0; k < e.size(); ++k) v *= powers[k][e[k]];
    out[idx] = v;
  });
  return out;
}

FieldElem eval_cached(const FieldSpec& K, const FieldVector& f, std::span<const FieldElem> values) {
  FieldElem acc = K.zero();
  for (const auto& [idx, c] : f.entries) acc = K.add(acc, K.scale(values[idx], c.packed));
  return acc;
}

BigInt eval_cached(const IntVector& f, std::span<const BigInt> values) {
  BigInt acc = 0;
  for (const auto& [idx, c] : f.entries) acc += c * values[idx];
  return acc;
}

namespace {

using Bits = std::vector<std::uint64_t>;

// Member evaluation specialised per carrier.
struct FieldEval {
  const FieldSpec& K;
  const FieldClass& cls;
  std::vector<FieldElem> cache(const std::vector<std::uint64_t>& point) const {
    return monomial_values(K, cls.order, point);
  }
  bool nonzero(std::size_t member, const std::vector<FieldElem>& values) const {
    return !K.is_zero(eval_cached(K, cls.members[member], values));
  }
};

struct IntEval {
  const IntClass& cls;
  std::vector<BigInt> cache(const std::vector<std::uint64_t>& point) const {
    return monomial_values(cls.order, point);
  }
  bool nonzero(std::size_t member, const std::vector<BigInt>& values) const {
    return sgn(eval_cached(cls.members[member], values)) != 0;
  }
};

template <class Cls>
std::vector<std::size_t> nonzero_members(const Cls& cls) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cls.members.size(); ++i)
    if (!cls.members[i].is_zero()) out.push_back(i);
  return out;
}

template <class Eval, class Cls>
std::vector<std::vector<std::uint64_t>> greedy_core(const Eval& ev, const Cls& cls, const Grid& grid,
                                                    Parallelism par, std::uint64_t seed) {
  const auto targets = nonzero_members(cls);
  const std::uint64_t universe = grid.size();
  const std::uint64_t limit = Budget::global().max_grid_points;
  const auto indices = sample_indices(universe, std::min(universe, limit), seed);
  const std::size_t words = (targets.size() + 63) / 64;
  require_budget(saturating_mul(indices.size(), words), std::uint64_t{1} << 26, "greedy hit matrix words");

  std::vector<Bits> hits(indices.size(), Bits(words, 0));
  parallel_for(indices.size(), par, [&](std::size_t k) {
    const auto values = ev.cache(grid.point(indices[k]));
    for (std::size_t j = 0; j < targets.size(); ++j)
      if (ev.nonzero(targets[j], values)) hits[k][j / 64] |= std::uint64_t{1} << (j % 64);
  });

  Bits covered(words, 0);
  for (const auto& h : hits)
    for (std::size_t w = 0; w < words; ++w) covered[w] |= h[w];
  for (std::size_t j = 0; j < targets.size(); ++j)
    if (!((covered[j / 64] >> (j % 64)) & 1))
      throw GridInsufficient(targets[j], "grid insufficient: class member " + std::to_string(targets[j]) +
                                             " vanishes on every grid point");

  Bits alive(words, 0);
  for (std::size_t j = 0; j < targets.size(); ++j) alive[j / 64] |= std::uint64_t{1} << (j % 64);
  std::size_t remaining = targets.size();
  std::vector<std::vector<std::uint64_t>> chosen;
  while (remaining > 0) {
    struct Best {
      std::size_t count = 0;
      std::size_t index = 0;
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(par.threads, indices.size()));
    std::vector<Best> best(workers);
    parallel_chunks(indices.size(), Parallelism{static_cast<unsigned>(workers)},
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                      Best b{0, begin};
                      for (std::size_t k = begin; k < end; ++k) {
                        std::size_t c = 0;
                        for (std::size_t w = 0; w < words; ++w) c += std::popcount(hits[k][w] & alive[w]);
                        if (c > b.count) b = {c, k};
                      }
                      best[chunk] = b;
                    });
    Best pick = best[0];
    for (const auto& b : best)
      if (b.count > pick.count) pick = b;
    for (std::size_t w = 0; w < words; ++w) alive[w] &= ~hits[pick.index][w];
    remaining -= pick.count;
    chosen.push_back(grid.point(indices[pick.index]));
  }
  return chosen;
}

template <class Eval, class Cls>
std::optional<std::size_t> verify_core(const Eval& ev, const Cls& cls,
                                       const std::vector<std::vector<std::uint64_t>>& points, Parallelism par) {
  using Cache = decltype(ev.cache(points.front()));
  std::vector<Cache> caches(points.size());
  parallel_for(points.size(), par, [&](std::size_t k) { caches[k] = ev.cache(points[k]); });
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(par.threads, cls.members.size()));
  std::vector<std::optional<std::size_t>> first(workers);
  parallel_chunks(cls.members.size(), Parallelism{static_cast<unsigned>(workers)},
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i) {
                      if (cls.members[i].is_zero()) continue;
                      const bool hit = std::any_of(caches.begin(), caches.end(),
                                                   [&](const Cache& c) { return ev.nonzero(i, c); });
                      if (!hit) {
                        first[chunk] = i;
                        return;
                      }
                    }
                  });
  for (const auto& f : first)
    if (f) return f;
  return std::nullopt;
}

template <class Eval, class Cls>
std::optional<std::size_t> verify_points(const Eval& ev, const Cls& cls,
                                         const std::vector<std::vector<std::uint64_t>>& points, Parallelism par) {
  if (points.empty()) {
    for (std::size_t i = 0; i < cls.members.size(); ++i)
      if (!cls.members[i].is_zero()) return i;
    return std::nullopt;
  }
  return verify_core(ev, cls, points, par);
}

void check_ff_class(const FieldClass& cls, const FieldSpec& K) {
  if (cls.params.mode != "ff") throw InvalidArgument("expected a finite-field class");
  if (K.characteristic() != cls.params.p)
    throw CarrierMismatch("extension " + K.name() + " does not extend F_" + std::to_string(cls.params.p));
  const std::uint64_t d = cls.order.degree();
  if (K.order() < d * d)
    throw InvalidArgument("extension field too small: q = " + std::to_string(K.order()) + " < d^2");
}

HittingSet ff_skeleton(const FieldClass& cls, const FieldSpec& K, const std::string& strategy, std::uint64_t seed) {
  HittingSet hs;
  hs.mode = "ff";
  hs.field = K;
  hs.base_p = cls.params.p;
  hs.n = cls.order.num_vars();
  hs.d = cls.order.degree();
  hs.strategy = strategy;
  hs.seed = seed;
  return hs;
}

HittingSet int_skeleton(const IntClass& cls, std::uint64_t B, const std::string& strategy, std::uint64_t seed) {
  if (cls.params.mode != "int") throw InvalidArgument("expected an integer class");
  HittingSet hs;
  hs.mode = "int";
  hs.grid_bound = B;
  hs.n = cls.order.num_vars();
  hs.d = cls.order.degree();
  hs.strategy = strategy;
  hs.seed = seed;
  return hs;
}

}  // namespace

HittingSet greedy_hitting_set(const FieldClass& cls, const FieldSpec& K, Parallelism par, std::uint64_t seed) {
  check_ff_class(cls, K);
  HittingSet hs = ff_skeleton(cls, K, "greedy", seed);
  hs.points = greedy_core(FieldEval{K, cls}, cls, ff_grid(K, hs.n), par, seed);
  hs.verified = !verify_hitting_set(hs, cls, par).has_value();
  if (!hs.verified) throw Error("greedy hitting set failed its own verification");
  return hs;
}

HittingSet greedy_hitting_set(const IntClass& cls, std::uint64_t B, Parallelism par, std::uint64_t seed) {
  HittingSet hs = int_skeleton(cls, B, "greedy", seed);
  hs.points = greedy_core(IntEval{cls}, cls, int_grid(B, hs.n), par, seed);
  hs.verified = !verify_hitting_set(hs, cls, par).has_value();
  if (!hs.verified) throw Error("greedy hitting set failed its own verification");
  return hs;
}

RandomHittingResult random_hitting_set(const FieldClass& cls, const FieldSpec& K, std::uint64_t t,
                                       std::uint64_t seed, Parallelism par) {
  check_ff_class(cls, K);
  RandomHittingResult out{ff_skeleton(cls, K, "random", seed), std::nullopt};
  const Grid grid = ff_grid(K, out.hs.n);
  for (auto idx : sample_indices(grid.size(), t, seed)) out.hs.points.push_back(grid.point(idx));
  out.counterexample = verify_hitting_set(out.hs, cls, par);
  out.hs.verified = !out.counterexample.has_value();
  return out;
}

RandomHittingResult random_hitting_set(const IntClass& cls, std::uint64_t B, std::uint64_t t, std::uint64_t seed,
                                       Parallelism par) {
  RandomHittingResult out{int_skeleton(cls, B, "random", seed), std::nullopt};
  const Grid grid = int_grid(B, out.hs.n);
  for (auto idx : sample_indices(grid.size(), t, seed)) out.hs.points.push_back(grid.point(idx));
  out.counterexample = verify_hitting_set(out.hs, cls, par);
  out.hs.verified = !out.counterexample.has_value();
  return out;
}

std::optional<std::size_t> verify_hitting_set(const HittingSet& hs, const FieldClass& cls, Parallelism par) {
  if (hs.mode != "ff" || !hs.field) throw InvalidArgument("hitting set is not a finite-field hitting set");
  if (hs.n != cls.order.num_vars() || hs.d != cls.order.degree())
    throw InvalidArgument("hitting set parameters (n, d) do not match the class");
  check_ff_class(cls, *hs.field);
  return verify_points(FieldEval{*hs.field, cls}, cls, hs.points, par);
}

std::optional<std::size_t> verify_hitting_set(const HittingSet& hs, const IntClass& cls, Parallelism par) {
  if (hs.mode != "int") throw InvalidArgument("hitting set is not an integer hitting set");
  if (hs.n != cls.order.num_vars() || hs.d != cls.order.degree())
    throw InvalidArgument("hitting set parameters (n, d) do not match the class");
  return verify_points(IntEval{cls}, cls, hs.points, par);
}

namespace {

template <class Count>
std::uint64_t grid_walk(std::size_t axis, std::uint32_t n, Count&& zero_at) {
  const std::uint64_t total = saturating_pow(axis, n);
  require_budget(total, Budget::global().max_grid_points, "pit grid points");
  std::vector<std::size_t> digits(n, 0);
  std::uint64_t zeros = 0;
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t v = k;
    for (std::uint32_t i = n; i-- > 0;) {
      digits[i] = v % axis;
      v /= axis;
    }
    if (zero_at(digits)) ++zeros;
  }
  return zeros;
}

void check_pit_bound(std::uint64_t zeros, std::uint64_t degree, std::size_t axis, std::uint32_t n) {
  const std::uint64_t bound = saturating_mul(degree, saturating_pow(axis, n - 1));
  if (zeros > bound)
    throw PropertyViolation("polynomial identity lemma violated: " + std::to_string(zeros) + " zeros > " +
                            std::to_string(bound));
}

}  // namespace

std::uint64_t pit_zero_count(const IntVector& v, std::span<const BigInt> S) {
  const std::uint32_t n = v.order.num_vars();
  std::vector<BigInt> point(n);
  const IntegerRing Z;
  const std::uint64_t zeros = grid_walk(S.size(), n, [&](const std::vector<std::size_t>& digits) {
    for (std::uint32_t i = 0; i < n; ++i) point[i] = S[digits[i]];
    return sgn(poly_eval(Z, v, std::span<const BigInt>(point))) == 0;
  });
  if (!v.is_zero()) check_pit_bound(zeros, coeff_degree(v), S.size(), n);
  return zeros;
}

std::uint64_t pit_zero_count(const FieldVector& v, const FieldSpec& K, std::span<const FieldElem> S) {
  const std::uint32_t n = v.order.num_vars();
  for (const auto& [idx, c] : v.entries) K.check(c);
  for (const auto& a : S) K.check(a);
  std::vector<FieldElem> point(n);
  const std::uint64_t zeros = grid_walk(S.size(), n, [&](const std::vector<std::size_t>& digits) {
    for (std::uint32_t i = 0; i < n; ++i) point[i] = S[digits[i]];
    return K.is_zero(poly_eval(K, v, std::span<const FieldElem>(point)));
  });
  if (!v.is_zero()) check_pit_bound(zeros, coeff_degree(v), S.size(), n);
  return zeros;
}

std::uint64_t hitting_set_size_bound(std::uint64_t n, std::uint64_t s) {
  const double ln = std::log2(static_cast<double>(n)), ls = std::log2(static_cast<double>(s));
  return static_cast<std::uint64_t>(std::ceil(2.0 * s * (ln + 2.0 * ls + 4.0)));
}

std::uint64_t definable_hitting_set_size_bound(std::uint64_t s) {
  const double ls = std::log2(static_cast<double>(s));
  return static_cast<std::uint64_t>(std::ceil(2.0 * s * (3.0 * ls + 4.0)));
}

std::uint64_t vp_grid_bound(std::uint64_t s, std::uint64_t d) { return saturating_pow(saturating_mul(s, d), 2); }

std::uint64_t vnp_grid_bound(std::uint64_t s, std::uint64_t d, std::uint64_t delta_size) {
  return saturating_mul(saturating_mul(d, s), delta_size);
}

}  // namespace forge
