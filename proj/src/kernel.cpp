#include "forge/kernel.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "forge/rng.hpp"

namespace forge {

EvalMatrixFF eval_matrix_ff(const HittingSet& hs) {
  if (hs.mode != "ff" || !hs.field) throw InvalidArgument("eval_matrix_ff needs a finite-field hitting set");
  const FieldSpec& K = *hs.field;
  const MonomialOrder order = hs.order();
  require_budget(order.size(), Budget::global().max_matrix_columns, "matrix columns N");
  EvalMatrixFF out{K.characteristic(), order.size(), {}};
  for (const auto& a : hs.points) {
    if (a.size() != hs.n) throw InvalidArgument("hitting-set point has the wrong dimension");
    for (auto c : a)
      if (c >= K.order()) throw CarrierMismatch("hitting-set point outside " + K.name());
    const auto values = monomial_values(K, order, a);
    for (std::uint32_t i = 1; i <= K.degree(); ++i) {
      std::vector<std::uint32_t> row(order.size());
      for (std::size_t m = 0; m < order.size(); ++m) row[m] = K.project(values[m], i);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

EvalMatrixInt eval_matrix_int(const HittingSet& hs) {
  if (hs.mode != "int") throw InvalidArgument("eval_matrix_int needs an integer hitting set");
  const MonomialOrder order = hs.order();
  require_budget(order.size(), Budget::global().max_matrix_columns, "matrix columns N");
  EvalMatrixInt out{order.size(), {}};
  for (const auto& a : hs.points) out.rows.push_back(monomial_values(order, a));
  return out;
}

KernelBasis kernel_basis_ff(const EvalMatrixFF& m) {
  const std::uint64_t p = m.p;
  auto a = m.rows;
  const std::size_t cols = m.cols;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  auto inverse = [p](std::uint64_t x) {
    std::uint64_t result = 1, base = x % p, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  };
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[row]);
    const std::uint64_t inv = inverse(a[row][col]);
    for (auto& x : a[row]) x = static_cast<std::uint32_t>(x * inv % p);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const std::uint64_t f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c)
        a[r][c] = static_cast<std::uint32_t>((a[r][c] + (p - f) * a[row][c]) % p);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  KernelBasis kb{m.p, cols, pivot_cols.size(), {}};
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r)
      v[pivot_cols[r]] = static_cast<std::uint32_t>((p - a[r][free]) % p);
    kb.basis.push_back(std::move(v));
  }
  return kb;
}

std::vector<std::uint32_t> sample_kernel(const KernelBasis& kb, std::uint64_t seed) {
  if (kb.basis.empty())
    throw InvalidArgument("kernel is trivial (N <= rank): parameters too small for a non-trivial witness");
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> coeffs(kb.basis.size());
  do {
    for (auto& c : coeffs) c = uniform_below(rng, kb.p);
  } while (std::all_of(coeffs.begin(), coeffs.end(), [](std::uint64_t c) { return c == 0; }));
  std::vector<std::uint32_t> out(kb.cols, 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    for (std::size_t c = 0; c < kb.cols; ++c)
      out[c] = static_cast<std::uint32_t>((out[c] + coeffs[j] * kb.basis[j][c]) % kb.p);
  return out;
}

FieldVector field_vector(const MonomialOrder& order, const std::vector<std::uint32_t>& dense) {
  if (dense.size() != order.size()) throw InvalidArgument("dense vector length does not match N");
  FieldVector v{order, {}};
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i]) v.entries.emplace(i, FieldElem{dense[i]});
  return v;
}

IntVector int_vector(const MonomialOrder& order, const std::vector<int>& dense) {
  if (dense.size() != order.size()) throw InvalidArgument("dense vector length does not match N");
  IntVector v{order, {}};
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i]) v.entries.emplace(i, BigInt(dense[i]));
  return v;
}

std::vector<BigInt> gamma_map(const IntVector& z, const EvalMatrixInt& m) {
  if (z.order.size() != m.cols) throw InvalidArgument("gamma_map: vector length does not match N");
  std::vector<BigInt> out;
  for (const auto& row : m.rows) {
    BigInt acc = 0;
    for (const auto& [idx, c] : z.entries) acc += c * row[idx];
    out.push_back(acc);
  }
  return out;
}

namespace {

using Key = std::vector<std::int64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

int ternary_digit(std::uint64_t v) { return v == 0 ? 0 : (v == 1 ? 1 : -1); }

}  // namespace

SiegelResult siegel_search(const EvalMatrixInt& m, const BigInt& M, Parallelism par, std::uint64_t table_budget) {
  SiegelResult out;
  const std::size_t N = m.cols;
  const std::size_t H = m.rows.size();
  out.pigeonhole = pow(BigInt(2), N) > pow(2 * M + 1, H);

  std::size_t prefix = 0;
  while (prefix < N && saturating_pow(3, (prefix + 1) / 2) <= table_budget) ++prefix;
  out.prefix = prefix;
  if (prefix == 0) return out;

  std::vector<std::vector<std::int64_t>> rows(H, std::vector<std::int64_t>(prefix));
  BigInt row_max = 0;
  for (std::size_t a = 0; a < H; ++a) {
    BigInt sum = 0;
    for (std::size_t c = 0; c < prefix; ++c) sum += abs(m.rows[a][c]);
    if (sum > BigInt("4611686018427387904")) throw BudgetExceeded("siegel_search: row sums exceed 2^62");
    for (std::size_t c = 0; c < prefix; ++c) rows[a][c] = m.rows[a][c].get_si();
    row_max = std::max(row_max, sum);
  }
  out.pigeonhole_prefix = pow(BigInt(2), prefix) > pow(row_max + 1, H);

  const std::size_t low = prefix / 2;
  const std::size_t high = prefix - low;
  const std::uint64_t low_count = saturating_pow(3, low);
  const std::uint64_t high_count = saturating_pow(3, high);
  out.table_size = low_count;

  auto image = [&](std::uint64_t code, std::size_t offset, std::size_t len, Key& key) {
    std::fill(key.begin(), key.end(), 0);
    for (std::size_t c = 0; c < len; ++c, code /= 3) {
      const int digit = ternary_digit(code % 3);
      if (digit == 0) continue;
      for (std::size_t a = 0; a < H; ++a) key[a] += digit * rows[a][offset + c];
    }
  };

  std::unordered_map<Key, std::uint64_t, KeyHash> table;
  table.reserve(low_count);
  std::optional<std::uint64_t> low_only;
  Key key(H);
  const Key zero(H, 0);
  for (std::uint64_t u = 0; u < low_count; ++u) {
    image(u, 0, low, key);
    if (u != 0 && key == zero && !low_only) low_only = u;
    table.try_emplace(key, u);
  }

  std::optional<std::pair<std::uint64_t, std::uint64_t>> found;  // (high code, low code)
  if (low_only) {
    found = std::make_pair(std::uint64_t{0}, *low_only);
  } else if (high_count > 1) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(par.threads, high_count - 1));
    std::vector<std::optional<std::pair<std::uint64_t, std::uint64_t>>> hits(workers);
    parallel_chunks(high_count - 1, Parallelism{static_cast<unsigned>(workers)},
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                      Key k(H);
                      for (std::uint64_t v = begin + 1; v < end + 1; ++v) {
                        image(v, low, high, k);
                        for (auto& x : k) x = -x;
                        auto it = table.find(k);
                        if (it != table.end()) {
                          hits[chunk] = std::make_pair(v, it->second);
                          return;
                        }
                      }
                    });
    for (const auto& h : hits)
      if (h) {
        found = h;
        break;
      }
  }
  if (!found) return out;

  std::vector<int> h(N, 0);
  std::uint64_t u = found->second, v = found->first;
  for (std::size_t c = 0; c < low; ++c, u /= 3) h[c] = ternary_digit(u % 3);
  for (std::size_t c = 0; c < high; ++c, v /= 3) h[low + c] = ternary_digit(v % 3);
  const auto first = std::find_if(h.begin(), h.end(), [](int x) { return x != 0; });
  if (first == h.end()) throw Error("siegel_search produced the zero vector");
  if (*first < 0)
    for (auto& x : h) x = -x;
  IntVector check{MonomialOrder(), {}};
  for (std::size_t c = 0; c < N; ++c)
    if (h[c]) check.entries.emplace(c, BigInt(h[c]));
  for (const auto& row : m.rows) {
    BigInt acc = 0;
    for (const auto& [idx, c] : check.entries) acc += c * row[idx];
    if (sgn(acc) != 0) throw Error("siegel_search: collision failed re-verification");
  }
  out.h = std::move(h);
  return out;
}

}  // namespace forge
