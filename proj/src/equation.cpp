#include "forge/equation.hpp"

#include <map>

#include "forge/kernel.hpp"

namespace forge {

namespace {

void check_order(const MonomialOrder& expected, const MonomialOrder& got) {
  if (!(expected == got))
    throw InvalidArgument("coefficient vector order (n=" + std::to_string(got.num_vars()) +
                          ", d=" + std::to_string(got.degree()) + ") does not match the equation (n=" +
                          std::to_string(expected.num_vars()) + ", d=" + std::to_string(expected.degree()) + ")");
}

void check_delta(const IntVector& z) {
  if (!is_delta(z)) throw InvalidArgument("coefficient vector has an entry outside {-1, 0, 1}");
}

BigInt product_tree(std::vector<BigInt> terms) {
  if (terms.empty()) return 1;
  while (terms.size() > 1) {
    std::vector<BigInt> next((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next[i / 2] = terms[i] * terms[i + 1];
    if (terms.size() % 2) next.back() = terms.back();
    terms = std::move(next);
  }
  return terms[0];
}

std::int64_t proxy_inner(const std::vector<std::uint32_t>& proxy, const IntVector& z) {
  std::int64_t acc = 0;
  for (const auto& [idx, c] : z.entries) acc += c.get_si() * static_cast<std::int64_t>(proxy[idx]);
  return acc;
}

bool annihilated(std::int64_t x, std::uint64_t r, std::uint64_t R) {
  const std::int64_t range = static_cast<std::int64_t>(R);
  return x >= -range && x <= range && x % static_cast<std::int64_t>(r) != 0;
}

// Shared constant gates for compiled circuits.
class ConstCache {
 public:
  explicit ConstCache(Circuit& c) : c_(c) {}
  std::uint32_t get(std::int64_t v) {
    auto it = gates_.find(v);
    if (it != gates_.end()) return it->second;
    const std::uint32_t g = c_.add_const(BigInt(static_cast<long>(v)));
    gates_.emplace(v, g);
    return g;
  }

 private:
  Circuit& c_;
  std::map<std::int64_t, std::uint32_t> gates_;
};

}  // namespace

FieldElem or_gadget_ff(const FieldSpec& F, const FieldVector& z) {
  FieldElem prod = F.one();
  for (const auto& [idx, c] : z.entries) {
    F.check(c);
    prod = F.mul(prod, F.sub(F.one(), F.pow(c, F.order() - 1)));
  }
  return F.sub(F.one(), prod);
}

BigInt or_gadget_int(const IntVector& z) {
  check_delta(z);
  BigInt prod = 1;
  for (const auto& [idx, c] : z.entries) prod *= 1 - c;
  return 1 - prod;
}

std::uint64_t EquationFF::degree_bound() const {
  const std::uint64_t width = saturating_add(order.size(), rows.size());
  return saturating_mul(F.order(), width);
}

std::uint64_t EquationFF::formal_degree() const {
  const std::uint64_t width = saturating_add(order.size(), rows.size());
  return saturating_mul(F.order() - 1, width);
}

EquationFF build_equation_ff(const HittingSet& hs) {
  if (hs.mode != "ff" || !hs.field) throw InvalidArgument("build-ff needs a finite-field hitting set");
  const FieldSpec& K = *hs.field;
  if (hs.base_p != K.characteristic())
    throw CarrierMismatch("hitting set base field F_" + std::to_string(hs.base_p) + " does not match " + K.name());
  if (K.order() < std::uint64_t{hs.d} * hs.d)
    throw InvalidArgument("extension too small: |K| = " + std::to_string(K.order()) + " < d^2");
  EquationFF eq{FieldSpec::make(hs.base_p, 1), K, hs, hs.order(), {}};
  const std::size_t N = eq.order.size();
  require_budget(N, Budget::global().max_matrix_columns, "equation columns N");
  require_budget(saturating_mul(hs.points.size(), K.degree()), Budget::global().max_factors, "equation factors");
  eq.rows = eval_matrix_ff(hs).rows;
  return eq;
}

FFVerdict eval_equation_ff(const EquationFF& eq, const FieldVector& z) {
  check_order(eq.order, z.order);
  const FieldSpec& F = eq.F;
  const std::uint64_t p = F.characteristic();
  FFVerdict out{or_gadget_ff(F, z), "none", 0, 0};
  if (F.is_zero(out.value)) out.reason = "or";
  for (std::size_t k = 0; k < eq.rows.size(); ++k) {
    std::uint64_t L = 0;
    for (const auto& [idx, c] : z.entries) L = (L + std::uint64_t{c.packed} * eq.rows[k][idx]) % p;
    const FieldElem factor = F.sub(F.one(), F.pow(F.from_int(static_cast<std::int64_t>(L)), p - 1));
    out.value = F.mul(out.value, factor);
    if (F.is_zero(factor) && out.reason == "none") {
      out.reason = "factor";
      out.point = k / eq.K.degree();
      out.coord = static_cast<std::uint32_t>(k % eq.K.degree()) + 1;
    }
  }
  return out;
}

Circuit compile_equation_ff(const EquationFF& eq) {
  const std::size_t N = eq.order.size();
  const std::uint64_t p = eq.F.characteristic();
  require_budget(saturating_mul(eq.rows.size() + 1, 3 * N + 64), Budget::global().max_gates, "compiled FF circuit");
  Circuit c(static_cast<std::uint32_t>(N));
  ConstCache consts(c);
  std::vector<std::uint32_t> z(N);
  for (std::uint32_t m = 0; m < N; ++m) z[m] = c.add_var(m);
  const std::uint32_t one = consts.get(1);

  auto power = [&](std::uint32_t x, std::uint64_t e) {
    std::int64_t acc = -1;
    std::uint32_t base = x;
    while (true) {
      if (e & 1) acc = acc < 0 ? base : c.add_mul(static_cast<std::uint32_t>(acc), base);
      e >>= 1;
      if (!e) break;
      base = c.add_mul(base, base);
    }
    return static_cast<std::uint32_t>(acc);
  };
  auto one_minus = [&](std::uint32_t y) {
    const std::uint32_t neg = p == 2 ? y : c.add_mul(consts.get(static_cast<std::int64_t>(p - 1)), y);
    return c.add_add(one, neg);
  };

  std::int64_t prod = -1;
  for (std::uint32_t m = 0; m < N; ++m) {
    const std::uint32_t t = one_minus(power(z[m], p - 1));
    prod = prod < 0 ? t : c.add_mul(static_cast<std::uint32_t>(prod), t);
  }
  const std::uint32_t gadget = one_minus(static_cast<std::uint32_t>(prod));

  std::int64_t total = -1;
  for (const auto& row : eq.rows) {
    std::int64_t L = -1;
    for (std::uint32_t m = 0; m < N; ++m) {
      if (row[m] == 0) continue;
      const std::uint32_t term = row[m] == 1 ? z[m] : c.add_mul(consts.get(row[m]), z[m]);
      L = L < 0 ? term : c.add_add(static_cast<std::uint32_t>(L), term);
    }
    if (L < 0) L = consts.get(0);
    const std::uint32_t factor = one_minus(power(static_cast<std::uint32_t>(L), p - 1));
    total = total < 0 ? factor : c.add_mul(static_cast<std::uint32_t>(total), factor);
  }
  if (total >= 0) c.add_mul(gadget, static_cast<std::uint32_t>(total));
  else c.set_output(gadget);
  return c;
}

std::vector<std::uint32_t> proxy_eval(std::span<const std::uint64_t> a, std::uint64_t r, const MonomialOrder& order) {
  if (r < 2) throw InvalidArgument("proxy_eval: modulus must be >= 2");
  if (a.size() != order.num_vars()) throw InvalidArgument("proxy_eval: point dimension does not match n");
  std::vector<std::vector<std::uint64_t>> powers(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    powers[k].push_back(1 % r);
    for (std::uint32_t j = 0; j < order.degree(); ++j)
      powers[k].push_back(static_cast<std::uint64_t>((static_cast<unsigned __int128>(powers[k].back()) * (a[k] % r)) % r));
  }
  std::vector<std::uint32_t> out(order.size());
  order.for_each([&](std::size_t idx, const Exponents& e) {
    std::uint64_t v = 1 % r;
    for (std::size_t k = 0; k < e.size(); ++k)
      v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * powers[k][e[k]]) % r);
    out[idx] = static_cast<std::uint32_t>(v);
  });
  return out;
}

std::uint64_t qr_degree(std::uint64_t r, std::uint64_t R) { return 2 * R - 2 * (R / r); }

BigInt qr_eval(std::uint64_t r, const BigInt& x, std::uint64_t R) {
  if (r < 2) throw InvalidArgument("qr_eval: r must be >= 2");
  if (R < 1) throw InvalidArgument("qr_eval: R must be >= 1");
  require_budget(qr_degree(r, R), Budget::global().max_factors, "Q_r factors");
  std::vector<BigInt> terms;
  terms.reserve(qr_degree(r, R));
  const auto range = static_cast<long>(R);
  for (long i = -range; i <= range; ++i)
    if (i % static_cast<long>(r) != 0) terms.emplace_back(x - i);
  return product_tree(std::move(terms));
}

std::uint64_t value_bits(const BigInt& M) { return ceil_log2(M + 1); }

std::uint64_t crt_witness(const BigInt& value, const BigInt& M) {
  if (sgn(value) == 0 || abs(value) > M) throw InvalidArgument("crt_witness: requires 0 < |value| <= M");
  const std::uint64_t ell = value_bits(M);
  for (std::uint64_t r = 2; r <= std::max<std::uint64_t>(2, ell * ell); ++r)
    if (mod_floor(value, r) != 0) return r;
  throw PropertyViolation("crt_witness: every r in [2, ell^2] divides " + to_string(value));
}

std::uint64_t EquationInt::linear_factor_count() const {
  std::uint64_t per_point = 0;
  for (std::uint64_t r = 2; r <= r_max(); ++r) per_point += qr_degree(r, R);
  return saturating_mul(hs.points.size(), per_point);
}

std::uint64_t EquationInt::formal_degree() const { return saturating_add(order.size(), linear_factor_count()); }

std::uint64_t EquationInt::coarse_degree_bound() const {
  return saturating_mul(order.size(), saturating_add(1, linear_factor_count()));
}

EquationInt build_equation_int(const HittingSet& hs) {
  if (hs.mode != "int") throw InvalidArgument("build-int needs an integer hitting set");
  if (hs.grid_bound == 0) throw InvalidArgument("integer hitting set without grid bound");
  EquationInt eq;
  eq.hs = hs;
  eq.order = hs.order();
  eq.B = hs.grid_bound;
  const std::size_t N = eq.order.size();
  require_budget(N, Budget::global().max_matrix_columns, "equation columns N");
  eq.M = BigInt(std::to_string(N)) * pow(BigInt(std::to_string(eq.B)), hs.d);
  eq.ell = value_bits(eq.M);
  eq.R = saturating_mul(N, eq.ell * eq.ell);
  require_budget(eq.factor_count(), Budget::global().max_factors, "equation factors |H| (ell^2 - 1)");
  for (const auto& a : hs.points) {
    if (a.size() != hs.n) throw InvalidArgument("hitting-set point has the wrong dimension");
    for (auto c : a)
      if (c < 1 || c > eq.B) throw InvalidArgument("hitting-set point outside [1, B]^n");
    eq.values.push_back(monomial_values(eq.order, a));
    std::vector<std::vector<std::uint32_t>> per_r;
    for (std::uint64_t r = 2; r <= eq.r_max(); ++r) per_r.push_back(proxy_eval(a, r, eq.order));
    eq.proxies.push_back(std::move(per_r));
  }
  return eq;
}

IntVerdict eval_equation_int_verdict(const EquationInt& eq, const IntVector& z) {
  check_order(eq.order, z.order);
  check_delta(z);
  if (z.is_zero()) return {true, "or", 0, 0, 0};
  for (std::size_t a = 0; a < eq.proxies.size(); ++a)
    for (std::uint64_t r = 2; r <= eq.r_max(); ++r) {
      const std::int64_t x = proxy_inner(eq.proxies[a][r - 2], z);
      if (annihilated(x, r, eq.R)) return {true, "factor", a, r, x};
    }
  return {false, "none", 0, 0, 0};
}

BigInt eval_equation_int_exact(const EquationInt& eq, const IntVector& z) {
  check_order(eq.order, z.order);
  const BigInt gadget = or_gadget_int(z);
  const std::uint64_t factor_bits = bit_length(BigInt(std::to_string(2 * eq.R + eq.order.size() * eq.r_max()))) + 1;
  require_budget(saturating_mul(eq.linear_factor_count(), factor_bits), Budget::global().max_exact_bits,
                 "exact P_N evaluation bits");
  BigInt value = gadget;
  for (std::size_t a = 0; a < eq.proxies.size(); ++a)
    for (std::uint64_t r = 2; r <= eq.r_max(); ++r) {
      const BigInt x(static_cast<long>(proxy_inner(eq.proxies[a][r - 2], z)));
      value *= qr_eval(r, x, eq.R);
    }
  return value;
}

Circuit compile_equation_int(const EquationInt& eq) {
  const std::size_t N = eq.order.size();
  const std::uint64_t estimate = saturating_add(
      saturating_add(3 * N, saturating_mul(eq.factor_count(), 2 * N + 1)),
      saturating_add(2 * eq.linear_factor_count(), 2 * eq.R + 1));
  require_budget(estimate, Budget::global().max_gates, "compiled integer circuit gates");
  Circuit c(static_cast<std::uint32_t>(N));
  ConstCache consts(c);
  std::vector<std::uint32_t> z(N);
  for (std::uint32_t m = 0; m < N; ++m) z[m] = c.add_var(m);
  const std::uint32_t one = consts.get(1);
  const std::uint32_t minus_one = consts.get(-1);

  std::int64_t prod = -1;
  for (std::uint32_t m = 0; m < N; ++m) {
    const std::uint32_t t = c.add_add(one, c.add_mul(minus_one, z[m]));
    prod = prod < 0 ? t : c.add_mul(static_cast<std::uint32_t>(prod), t);
  }
  const std::uint32_t gadget = c.add_add(one, c.add_mul(minus_one, static_cast<std::uint32_t>(prod)));

  const auto range = static_cast<std::int64_t>(eq.R);
  std::int64_t total = -1;
  for (std::size_t a = 0; a < eq.proxies.size(); ++a)
    for (std::uint64_t r = 2; r <= eq.r_max(); ++r) {
      const auto& proxy = eq.proxies[a][r - 2];
      std::int64_t ip = -1;
      for (std::uint32_t m = 0; m < N; ++m) {
        if (proxy[m] == 0) continue;
        const std::uint32_t term = proxy[m] == 1 ? z[m] : c.add_mul(consts.get(proxy[m]), z[m]);
        ip = ip < 0 ? term : c.add_add(static_cast<std::uint32_t>(ip), term);
      }
      if (ip < 0) ip = consts.get(0);
      std::int64_t q = -1;
      for (std::int64_t i = -range; i <= range; ++i) {
        if (i % static_cast<std::int64_t>(r) == 0) continue;
        const std::uint32_t f = c.add_add(static_cast<std::uint32_t>(ip), consts.get(-i));
        q = q < 0 ? f : c.add_mul(static_cast<std::uint32_t>(q), f);
      }
      total = total < 0 ? q : c.add_mul(static_cast<std::uint32_t>(total), static_cast<std::uint32_t>(q));
    }
  if (total >= 0) c.add_mul(gadget, static_cast<std::uint32_t>(total));
  else c.set_output(gadget);
  return c;
}

}  // namespace forge
