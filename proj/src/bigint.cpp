#include "forge/bigint.hpp"

#include "forge/error.hpp"

namespace forge {

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw InvalidArgument("malformed integer literal '" + s + "'");
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw InvalidArgument("malformed integer literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::string to_string(const BigRat& value) { return value.get_str(10); }

BigRat make_rational(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) throw InvalidArgument("rational with zero denominator");
  BigRat out(num, den);
  out.canonicalize();
  return out;
}

std::uint64_t bit_length(const BigInt& value) {
  if (sgn(value) == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

std::uint64_t ceil_log2(const BigInt& value) {
  if (value < 1) throw InvalidArgument("ceil_log2 of non-positive value");
  const BigInt v = value - 1;
  return bit_length(v);
}

std::uint64_t mod_floor(const BigInt& value, std::uint64_t modulus) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), BigInt(std::to_string(modulus)).get_mpz_t());
  return std::stoull(r.get_str());
}

BigInt pow(const BigInt& base, std::uint64_t exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

}  // namespace forge
