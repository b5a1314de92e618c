#pragma once

// Finite-differences interaction detection. All checks perturb from the
// lower-bound corner: the first set moves to the box midpoint, the second to
// the upper bound, and
//   delta1 = f(x + l1 u1 + l2 u2) - f(x + l2 u2)
//   delta2 = f(x + l1 u1) - f(x)
// The sets interact iff |delta1 - delta2| exceeds the adaptive threshold.

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "oedg/index_set.hpp"
#include "oedg/problem.hpp"
#include "oedg/random.hpp"

namespace oedg {

/// Unit roundoff of double precision, 2^-53.
inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

/// gamma(k) = k u / (1 - k u). Throws StructuralError when k u >= 1.
double roundoff_gamma(std::size_t k);

/// ceil(sqrt(n)) + 2
std::size_t default_threshold_k(std::size_t n) noexcept;

/// eps = gamma(k) * (|f1| + |f2| + |f3| + |f4|), with k defaulting to
/// ceil(sqrt(n)) + 2 when `k` is 0.
double adaptive_threshold(const std::array<double, 4>& fitness, std::size_t n, std::size_t k = 0);

struct InteractionVerdict {
  bool interacting = false;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double threshold_used = 0.0;
};

struct DetectionOptions {
  /// Threshold constant; 0 selects ceil(sqrt(n)) + 2.
  std::size_t threshold_k = 0;
  /// Reuse perturbation points already evaluated in this run.
  bool memoize = true;
};

/// Per-run detection state: the cached lower-bound corner, bounds, options
/// and the point memo. Single owner; not thread-safe.
class DetectionContext {
 public:
  /// Evaluates the base point once (one FE on `counter`).
  DetectionContext(const OverlappingProblem& problem, EvaluationCounter& counter, DetectionOptions options = {});

  const OverlappingProblem& problem() const noexcept { return problem_; }
  EvaluationCounter& counter() noexcept { return counter_; }
  std::size_t dimension() const noexcept { return problem_.dimension(); }
  std::span<const double> base_point() const noexcept { return base_point_; }
  double base_fitness() const noexcept { return base_fitness_; }
  std::size_t threshold_k() const noexcept { return threshold_k_; }
  double threshold(const std::array<double, 4>& fitness) const;

  /// f at the base point with `mid` moved to the midpoint and `upper` moved
  /// to the upper bound. Memoised when enabled.
  double fitness_at(const IndexSet& mid, const IndexSet& upper);
  /// Same point, always evaluated.
  double evaluate_at(const IndexSet& mid, const IndexSet& upper);

  /// Memoised set-to-set check used by the grouping algorithms.
  InteractionVerdict check(const IndexSet& first, const IndexSet& second);

  std::size_t memo_size() const noexcept { return memo_.size(); }

 private:
  struct Key {
    std::uint64_t a;
    std::uint64_t b;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept { return static_cast<std::size_t>(key.a ^ (key.b << 1)); }
  };
  static Key make_key(const IndexSet& mid, const IndexSet& upper) noexcept;
  InteractionVerdict verdict(double f1, double f2, double f3, double f4) const;

  const OverlappingProblem& problem_;
  EvaluationCounter& counter_;
  DetectionOptions options_;
  std::size_t threshold_k_;
  std::vector<double> base_point_;
  std::vector<double> scratch_;
  double base_fitness_;
  std::unordered_map<Key, double, KeyHash> memo_;
};

/// Set-to-set check with three fresh evaluations (the base is cached).
/// Throws StructuralError if the sets overlap or either is empty.
InteractionVerdict set_interacts(const IndexSet& x1, const IndexSet& x2, DetectionContext& ctx);

/// Variables of `candidates` that directly interact with `seed`, plus the
/// seed itself. Found by recursive bisection of the candidate index range.
IndexSet interact_neighbours(Index seed, const IndexSet& candidates, DetectionContext& ctx);

struct ClosureOptions {
  /// Stop growing once the group reaches this many variables.
  std::size_t size_cap = std::numeric_limits<std::size_t>::max();
  /// When set, the order in which bisection halves are visited is shuffled.
  Rng* visit_order = nullptr;
};

/// Transitive growth: repeatedly adds every remaining variable of `universe`
/// that interacts with the growing set until a full pass finds none (or the
/// size cap is reached).
IndexSet interact_closure(const IndexSet& seed, const IndexSet& universe, DetectionContext& ctx,
                          ClosureOptions options = {});

/// Members of `x1` that interact with the set `x2` (the overlapping variables
/// of x1 with respect to x2).
IndexSet interact_ov(const IndexSet& x1, const IndexSet& x2, DetectionContext& ctx);

}  // namespace oedg
