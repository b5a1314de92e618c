#pragma once

// Evaluatable problem abstraction, function-evaluation accounting and the
// hidden ground-truth structure of an overlapping problem.
//
// Variable indices are 0-based everywhere in the library. Reports convert to
// 1-based labels (see report_index()).

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oedg/index_set.hpp"

namespace oedg {

/// Malformed input: dimension mismatch, invalid configuration, broken invariant.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The evaluator produced a non-finite fitness.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::vector<double> point)
      : std::runtime_error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

/// A feature that is registered but deliberately not implemented.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Phase : std::uint8_t { kGrouping = 0, kRefinement = 1, kOptimization = 2 };

inline constexpr std::size_t kPhaseCount = 3;

const char* phase_name(Phase phase) noexcept;

/// Counts objective calls. Increments are atomic so one counter may be shared
/// by worker threads inside a run; the active phase is not synchronised and
/// should be switched only while no evaluation is in flight.
class EvaluationCounter {
 public:
  EvaluationCounter() = default;
  EvaluationCounter(const EvaluationCounter&) = delete;
  EvaluationCounter& operator=(const EvaluationCounter&) = delete;

  void increment() noexcept;
  void flag_out_of_bounds() noexcept { out_of_bounds_.fetch_add(1, std::memory_order_relaxed); }

  std::uint64_t total() const noexcept { return total_.load(std::memory_order_relaxed); }
  std::uint64_t phase_total(Phase phase) const noexcept;
  std::uint64_t out_of_bounds() const noexcept { return out_of_bounds_.load(std::memory_order_relaxed); }

  Phase phase() const noexcept { return phase_; }
  void set_phase(Phase phase) noexcept { phase_ = phase; }

 private:
  std::atomic<std::uint64_t> total_{0};
  std::array<std::atomic<std::uint64_t>, kPhaseCount> per_phase_{};
  std::atomic<std::uint64_t> out_of_bounds_{0};
  Phase phase_ = Phase::kGrouping;
};

/// RAII phase switch; restores the previous phase on scope exit.
class PhaseScope {
 public:
  PhaseScope(EvaluationCounter& counter, Phase phase) : counter_(counter), previous_(counter.phase()) {
    counter_.set_phase(phase);
  }
  ~PhaseScope() { counter_.set_phase(previous_); }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  EvaluationCounter& counter_;
  Phase previous_;
};

/// True subcomponent index sets together with the shared members of each.
class GroundTruth {
 public:
  GroundTruth() = default;
  explicit GroundTruth(std::vector<IndexSet> subcomponents);

  const std::vector<IndexSet>& subcomponents() const noexcept { return subcomponents_; }
  const std::vector<IndexSet>& shared_variables() const noexcept { return shared_; }
  std::size_t size() const noexcept { return subcomponents_.size(); }

  /// Variables that occur in two or more subcomponents.
  IndexSet all_shared() const;

  /// Throws StructuralError unless the cover and containment invariants hold
  /// for a problem of dimension `n`.
  void validate(std::size_t n) const;

 private:
  std::vector<IndexSet> subcomponents_;
  std::vector<IndexSet> shared_;
};

/// Fraction of variables occurring in at least two subcomponents.
double overlapping_degree(const GroundTruth& truth, std::size_t n);

enum class Topology : std::uint8_t { kLine, kRing, kComplex, kCustom };
enum class Conflict : std::uint8_t { kConforming, kConflicting };

const char* topology_name(Topology topology) noexcept;
Topology parse_topology(const std::string& name);
const char* conflict_name(Conflict conflict) noexcept;

struct ProblemMetadata {
  std::string name;
  Topology topology = Topology::kCustom;
  Conflict conflict = Conflict::kConforming;
  double overlapping_degree = 0.0;
};

using Evaluator = std::function<double(std::span<const double>)>;

/// A deterministic box-bounded black box whose decomposition structure is
/// known to the benchmark but not to the decomposers.
class OverlappingProblem {
 public:
  OverlappingProblem(std::vector<double> lower, std::vector<double> upper, Evaluator evaluator,
                     GroundTruth truth, ProblemMetadata metadata);

  std::size_t dimension() const noexcept { return lower_.size(); }
  std::span<const double> lower_bound() const noexcept { return lower_; }
  std::span<const double> upper_bound() const noexcept { return upper_; }
  const GroundTruth& ground_truth() const noexcept { return truth_; }
  const ProblemMetadata& metadata() const noexcept { return metadata_; }

  /// Raw objective call; does not count. Use evaluate() inside algorithms.
  double raw(std::span<const double> x) const { return evaluator_(x); }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  Evaluator evaluator_;
  GroundTruth truth_;
  ProblemMetadata metadata_;
};

/// Counted evaluation. Out-of-bounds points are evaluated but flagged on the
/// counter.
double evaluate(const OverlappingProblem& problem, std::span<const double> x, EvaluationCounter& counter);

/// 1-based label of a 0-based index, as used in reports.
constexpr std::size_t report_index(std::size_t index) noexcept { return index + 1; }

}  // namespace oedg
