#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forge/coeff_vector.hpp"
#include "forge/field.hpp"
#include "forge/parallel.hpp"
#include "forge/poly_class.hpp"

namespace forge {

/// Evaluation points. mode "ff": coordinates are canonical element indices
/// of `field` (= K). mode "int": integer coordinates in [1, grid_bound].
struct HittingSet {
  std::string mode = "ff";
  std::optional<FieldSpec> field;
  std::uint32_t base_p = 0;
  std::uint64_t grid_bound = 0;
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::vector<std::vector<std::uint64_t>> points;
  std::string strategy;
  std::uint64_t seed = 0;
  bool verified = false;

  MonomialOrder order() const { return MonomialOrder(n, d); }
};

/// Point universe: K^n (ff) or [B]^n (int), indexed lexicographically with
/// the first coordinate most significant.
struct Grid {
  std::string mode;
  std::uint64_t axis = 0;  // q or B
  std::uint32_t n = 0;

  std::uint64_t size() const;  // saturating
  std::vector<std::uint64_t> point(std::uint64_t index) const;
};

Grid ff_grid(const FieldSpec& K, std::uint32_t n);
Grid int_grid(std::uint64_t B, std::uint32_t n);

/// t distinct indices from [0, size), sorted, determined by seed.
std::vector<std::uint64_t> sample_indices(std::uint64_t size, std::uint64_t t, std::uint64_t seed);

/// eval(a)_m = m(a) for every monomial m of the order.
std::vector<FieldElem> monomial_values(const FieldSpec& K, const MonomialOrder& order,
                                       std::span<const std::uint64_t> point);
std::vector<BigInt> monomial_values(const MonomialOrder& order, std::span<const std::uint64_t> point);

/// f(a) for f with F_p coefficients, a in K^n, given eval(a).
FieldElem eval_cached(const FieldSpec& K, const FieldVector& f, std::span<const FieldElem> values);
BigInt eval_cached(const IntVector& f, std::span<const BigInt> values);

/// Raised when some nonzero member vanishes on every grid point.
class GridInsufficient : public PropertyViolation {
 public:
  GridInsufficient(std::size_t member, const std::string& what) : PropertyViolation(what), member_(member) {}
  std::size_t member() const { return member_; }

 private:
  std::size_t member_;
};

/// Greedy cover: repeatedly takes the grid point that is nonzero on the most
/// surviving members (ties: lexicographically least point). Grids larger
/// than the budget are replaced by a seeded random subset.
HittingSet greedy_hitting_set(const FieldClass& cls, const FieldSpec& K, Parallelism par = {},
                              std::uint64_t seed = 0);
HittingSet greedy_hitting_set(const IntClass& cls, std::uint64_t B, Parallelism par = {}, std::uint64_t seed = 0);

struct RandomHittingResult {
  HittingSet hs;
  /// First member (canonical order) vanishing on every sampled point.
  std::optional<std::size_t> counterexample;
};

RandomHittingResult random_hitting_set(const FieldClass& cls, const FieldSpec& K, std::uint64_t t,
                                       std::uint64_t seed, Parallelism par = {});
RandomHittingResult random_hitting_set(const IntClass& cls, std::uint64_t B, std::uint64_t t, std::uint64_t seed,
                                       Parallelism par = {});

/// Index of the first nonzero member vanishing on all of H, or nullopt.
std::optional<std::size_t> verify_hitting_set(const HittingSet& hs, const FieldClass& cls, Parallelism par = {});
std::optional<std::size_t> verify_hitting_set(const HittingSet& hs, const IntClass& cls, Parallelism par = {});

/// Zeros of v on S^n. Throws PropertyViolation when v != 0 and the count
/// exceeds deg(v) * |S|^(n-1).
std::uint64_t pit_zero_count(const IntVector& v, std::span<const BigInt> S);
std::uint64_t pit_zero_count(const FieldVector& v, const FieldSpec& K, std::span<const FieldElem> S);

/// ceil(2s(log2 n + 2 log2 s + 4)).
std::uint64_t hitting_set_size_bound(std::uint64_t n, std::uint64_t s);
/// ceil(2s(3 log2 s + 4)).
std::uint64_t definable_hitting_set_size_bound(std::uint64_t s);
/// (s d)^2.
std::uint64_t vp_grid_bound(std::uint64_t s, std::uint64_t d);
/// d s |delta|.
std::uint64_t vnp_grid_bound(std::uint64_t s, std::uint64_t d, std::uint64_t delta_size = 3);

}  // namespace forge
