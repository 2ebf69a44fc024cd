#include "forge/coeff_vector.hpp"

namespace forge {

bool is_delta(const IntVector& v) {
  return std::all_of(v.entries.begin(), v.entries.end(), [](const auto& kv) { return kv.second == 1 || kv.second == -1; });
}

}  // namespace forge
