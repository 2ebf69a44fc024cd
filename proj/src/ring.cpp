#include "forge/ring.hpp"

#include "forge/error.hpp"

namespace forge {

bool constants_equal(const Constant& a, const Constant& b) {
  if (a.index() != b.index()) return false;
  if (const auto* i = std::get_if<BigInt>(&a)) return *i == std::get<BigInt>(b);
  return std::get<FieldDigits>(a) == std::get<FieldDigits>(b);
}

std::string describe(const Constant& c) {
  if (const auto* i = std::get_if<BigInt>(&c)) return to_string(*i);
  std::string out = "[";
  const auto& digits = std::get<FieldDigits>(c).digits;
  for (std::size_t k = 0; k < digits.size(); ++k) out += (k ? "," : "") + std::to_string(digits[k]);
  return out + "]";
}

BigInt IntegerRing::from_constant(const Constant& c) const {
  if (const auto* i = std::get_if<BigInt>(&c)) return *i;
  throw CarrierMismatch("field-element constant " + describe(c) + " in an integer circuit");
}

}  // namespace forge
