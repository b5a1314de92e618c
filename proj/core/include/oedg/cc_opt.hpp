#pragma once

// Contribution-based cooperative coevolution with a separable
// evolution-strategy subsolver.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oedg/decomposers.hpp"
#include "oedg/problem.hpp"
#include "oedg/random.hpp"

namespace oedg {

struct ContextVector {
  std::vector<double> x;
  double fitness = 0.0;
};

struct ContributionLedger {
  std::vector<double> contribution;
};

/// groups[i] holds the variables owned by subcomponent i (possibly none).
struct AllocationPlan {
  std::vector<IndexSet> groups;
};

/// Each variable goes to the containing subcomponent with the largest
/// contribution, ties to the lower index.
AllocationPlan allocate_shared(const std::vector<IndexSet>& subcomponents, const ContributionLedger& ledger,
                               std::size_t n);
AllocationPlan allocate_shared(const DecompositionResult& decomposition, const ContributionLedger& ledger,
                               std::size_t n);

/// Throws StructuralError unless the nonempty groups partition {0..n-1}.
void validate_plan(const AllocationPlan& plan, std::size_t n);

std::size_t population_size(std::size_t dimension);

/// Persistent search state of one group, in coordinates normalised to [0, 1].
struct SubsolverState {
  IndexSet group;
  double sigma = 0.3;
  std::vector<double> diag;
  std::vector<double> path;
};

struct Trajectory {
  std::vector<std::pair<std::uint64_t, double>> points;
};

/// One activation of the subsolver on `group` with the remaining coordinates
/// frozen at the context. Accepts improvements into `ctx`; evaluations stop
/// at `phase_fes` or when `counter` reaches `budget`. Returns the fitness
/// improvement over the phase start.
double subsolver_phase(const OverlappingProblem& problem, const IndexSet& group, ContextVector& ctx,
                       std::size_t phase_fes, Rng& rng, EvaluationCounter& counter, SubsolverState& state,
                       std::uint64_t budget = ~std::uint64_t{0});

struct CcOptions {
  std::size_t phase_generations = 5;
  /// Re-run the allocation after every cycle; otherwise allocate once after
  /// the bootstrap cycle.
  bool reallocate = true;
};

struct CcResult {
  std::vector<double> best_x;
  double best_f = 0.0;
  std::uint64_t fes_used = 0;
  Trajectory trajectory;
  /// Allocation used by each cycle and the ledger after it.
  std::vector<AllocationPlan> allocations;
  std::vector<ContributionLedger> ledgers;
};

CcResult cc_optimize(const OverlappingProblem& problem, const std::vector<IndexSet>& subcomponents,
                     std::uint64_t budget, std::uint64_t seed, const CcOptions& options = {});

std::string plan_to_json(const AllocationPlan& plan);
std::string trajectory_csv(const Trajectory& trajectory);

}  // namespace oedg
