#include "forge/field.hpp"

#include <algorithm>
#include <mutex>

#include "forge/error.hpp"

namespace forge {

namespace {

using Digits = std::vector<std::uint32_t>;

// Remainder of a by monic b over F_p; both low degree first.
Digits poly_rem(Digits a, const Digits& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  for (std::size_t k = a.size(); k-- > db;) {
    const std::uint64_t c = a[k] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      const std::size_t idx = k - db + j;
      a[idx] = static_cast<std::uint32_t>((a[idx] + (p - c) * static_cast<std::uint64_t>(b[j])) % p);
    }
  }
  a.resize(std::min(a.size(), db));
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

constexpr std::uint64_t kTableLimit = 1u << 16;

}  // namespace

struct FieldSpec::Tables {
  std::vector<std::uint32_t> exp;  // exp[k] = g^k, k in [0, q-1)
  std::vector<std::uint32_t> log;  // log[exp[k]] = k
};

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  if (monic.empty() || monic.back() != 1) throw InvalidArgument("is_irreducible: polynomial must be monic");
  const std::size_t deg = monic.size() - 1;
  if (deg == 0) return false;
  const Digits target(monic.begin(), monic.end());
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = saturating_pow(p, d);
    Digits divisor(d + 1, 0);
    divisor[d] = 1;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t v = k;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      const Digits rem = poly_rem(target, divisor, p);
      if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t c) { return c == 0; })) return false;
    }
  }
  return true;
}

FieldSpec::FieldSpec() : FieldSpec(2, {0, 1}) {}

FieldSpec::FieldSpec(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), r_(static_cast<std::uint32_t>(modulus.size() - 1)), modulus_(std::move(modulus)) {
  place_.resize(r_ + 1);
  place_[0] = 1;
  for (std::uint32_t i = 1; i <= r_; ++i) place_[i] = place_[i - 1] * p_;
  q_ = place_[r_];
  if (r_ > 1 && q_ <= kTableLimit) {
    auto tables = std::make_shared<Tables>();
    const auto factors = prime_factors(q_ - 1);
    std::uint32_t generator = 0;
    for (std::uint64_t k = 2; k < q_ && generator == 0; ++k) {
      const FieldElem g{static_cast<std::uint32_t>(k)};
      bool primitive = true;
      for (auto f : factors) {
        FieldElem acc = one();
        FieldElem base = g;
        for (std::uint64_t e = (q_ - 1) / f; e; e >>= 1) {
          if (e & 1) acc = mul_reference(acc, base);
          base = mul_reference(base, base);
        }
        if (acc.packed == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) generator = static_cast<std::uint32_t>(k);
    }
    tables->exp.resize(q_ - 1);
    tables->log.assign(q_, 0);
    FieldElem x = one();
    for (std::uint64_t k = 0; k + 1 < q_; ++k) {
      tables->exp[k] = x.packed;
      tables->log[x.packed] = static_cast<std::uint32_t>(k);
      x = mul_reference(x, FieldElem{generator});
    }
    tables_ = std::move(tables);
  }
}

FieldSpec FieldSpec::make(std::uint32_t p, std::uint32_t r, std::uint64_t max_size) {
  if (!is_prime(p)) throw InvalidArgument("ff_make: characteristic " + std::to_string(p) + " is not prime");
  if (r < 1) throw InvalidArgument("ff_make: extension degree must be >= 1");
  const std::uint64_t q = saturating_pow(p, r);
  if (q > max_size || q >= (1ull << 32))
    throw BudgetExceeded("ff_make: field size " + std::to_string(p) + "^" + std::to_string(r) +
                         " exceeds bound " + std::to_string(max_size));
  const std::uint64_t candidates = saturating_pow(p, r);
  Digits modulus(r + 1, 0);
  modulus[r] = 1;
  for (std::uint64_t k = 0; k < candidates; ++k) {
    std::uint64_t v = k;
    for (std::uint32_t i = 0; i < r; ++i) {
      modulus[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (is_irreducible(p, modulus)) return FieldSpec(p, modulus);
  }
  throw Error("ff_make: no irreducible polynomial found");  // unreachable for prime p
}

FieldSpec FieldSpec::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw InvalidArgument("field: characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2 || modulus.back() != 1) throw InvalidArgument("field: modulus must be monic of degree >= 1");
  for (auto c : modulus)
    if (c >= p) throw InvalidArgument("field: modulus coefficient out of range");
  if (saturating_pow(p, modulus.size() - 1) >= (1ull << 32)) throw BudgetExceeded("field: size exceeds 2^32");
  if (!is_irreducible(p, modulus)) throw InvalidArgument("field: modulus is reducible");
  return FieldSpec(p, std::move(modulus));
}

FieldElem FieldSpec::add(FieldElem a, FieldElem b) const {
  if (r_ == 1) return {static_cast<std::uint32_t>((std::uint64_t{a.packed} + b.packed) % p_)};
  if (p_ == 2) return {a.packed ^ b.packed};
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    out += ((a.packed % p_ + b.packed % p_) % p_) * place_[i];
    a.packed /= p_;
    b.packed /= p_;
  }
  return {out};
}

FieldElem FieldSpec::neg(FieldElem a) const {
  if (p_ == 2) return a;
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    out += ((p_ - a.packed % p_) % p_) * place_[i];
    a.packed /= p_;
  }
  return {out};
}

FieldElem FieldSpec::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldSpec::scale(FieldElem a, std::uint32_t c) const {
  c %= p_;
  if (c == 0) return {};
  if (c == 1) return a;
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    out += static_cast<std::uint32_t>((std::uint64_t{a.packed % p_} * c) % p_) * place_[i];
    a.packed /= p_;
  }
  return {out};
}

FieldElem FieldSpec::mul_reference(FieldElem a, FieldElem b) const {
  const Digits da = coords(a);
  const Digits db = coords(b);
  Digits prod(2 * r_ - 1, 0);
  for (std::uint32_t i = 0; i < r_; ++i)
    for (std::uint32_t j = 0; j < r_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
  const Digits rem = poly_rem(std::move(prod), modulus_, p_);
  return element(rem);
}

FieldElem FieldSpec::mul(FieldElem a, FieldElem b) const {
  if (r_ == 1) return {static_cast<std::uint32_t>((std::uint64_t{a.packed} * b.packed) % p_)};
  if (tables_) {
    if (a.packed == 0 || b.packed == 0) return {};
    const std::uint64_t k = (std::uint64_t{tables_->log[a.packed]} + tables_->log[b.packed]) % (q_ - 1);
    return {tables_->exp[k]};
  }
  return mul_reference(a, b);
}

FieldElem FieldSpec::pow(FieldElem a, std::uint64_t e) const {
  FieldElem acc = one();
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

FieldElem FieldSpec::inv(FieldElem a) const {
  check(a);
  if (a.packed == 0) throw InvalidArgument("field: inverse of zero");
  if (tables_) return {tables_->exp[(q_ - 1 - tables_->log[a.packed]) % (q_ - 1)]};
  return pow(a, q_ - 2);
}

FieldElem FieldSpec::from_int(std::int64_t v) const {
  const std::int64_t m = v % static_cast<std::int64_t>(p_);
  return {static_cast<std::uint32_t>(m < 0 ? m + p_ : m)};
}

FieldElem FieldSpec::from_bigint(const BigInt& v) const {
  return {static_cast<std::uint32_t>(mod_floor(v, p_))};
}

FieldElem FieldSpec::from_constant(const Constant& c) const {
  if (const auto* i = std::get_if<BigInt>(&c)) return from_bigint(*i);
  const auto& digits = std::get<FieldDigits>(c).digits;
  if (digits.size() > r_)
    throw CarrierMismatch("field constant has " + std::to_string(digits.size()) + " digits, field " + name() +
                          " has degree " + std::to_string(r_));
  for (auto d : digits)
    if (d >= p_) throw CarrierMismatch("field constant digit " + std::to_string(d) + " not below p");
  return element(digits);
}

Constant FieldSpec::to_constant(FieldElem a) const {
  if (r_ == 1) return BigInt(a.packed);
  return FieldDigits{coords(a)};
}

FieldElem FieldSpec::element(std::span<const std::uint32_t> digits) const {
  if (digits.size() > r_) throw CarrierMismatch("too many digits for field " + name());
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= p_) throw CarrierMismatch("digit out of range for field " + name());
    out += digits[i] * place_[i];
  }
  return {out};
}

FieldElem FieldSpec::element_at(std::uint64_t k) const {
  if (k >= q_) throw InvalidArgument("field element index out of range");
  return {static_cast<std::uint32_t>(k)};
}

std::vector<std::uint32_t> FieldSpec::coords(FieldElem a) const {
  Digits out(r_);
  for (std::uint32_t i = 0; i < r_; ++i) {
    out[i] = a.packed % p_;
    a.packed /= p_;
  }
  return out;
}

std::uint32_t FieldSpec::project(FieldElem a, std::uint32_t i) const {
  if (i < 1 || i > r_)
    throw InvalidArgument("phi_project: coordinate " + std::to_string(i) + " outside [1, " + std::to_string(r_) + "]");
  return (a.packed / place_[i - 1]) % p_;
}

void FieldSpec::check(FieldElem a) const {
  if (a.packed >= q_) throw CarrierMismatch("element " + std::to_string(a.packed) + " does not belong to " + name());
}

std::string FieldSpec::name() const {
  if (r_ == 1) return "F_" + std::to_string(p_);
  return "F_" + std::to_string(p_) + "^" + std::to_string(r_);
}

}  // namespace forge
