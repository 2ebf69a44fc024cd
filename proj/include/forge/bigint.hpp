#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace forge {

using BigInt = mpz_class;
/// Always canonical: lowest terms, positive denominator.
using BigRat = mpq_class;

BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& value);
std::string to_string(const BigRat& value);
BigRat make_rational(const BigInt& num, const BigInt& den);

/// Number of bits of |value| (0 for zero).
std::uint64_t bit_length(const BigInt& value);

/// ceil(log2(value)) for value >= 1.
std::uint64_t ceil_log2(const BigInt& value);

/// Floor modulus into [0, modulus).
std::uint64_t mod_floor(const BigInt& value, std::uint64_t modulus);

BigInt pow(const BigInt& base, std::uint64_t exp);

}  // namespace forge
