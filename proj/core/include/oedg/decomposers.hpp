#pragma once

// OEDG and the comparison decomposers (RDG3, ORDG, DG2). Every algorithm
// returns a DecompositionResult with subcomponents N and the aligned shared
// variable groups OV.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oedg/index_set.hpp"
#include "oedg/interaction.hpp"
#include "oedg/problem.hpp"
#include "oedg/random.hpp"

namespace oedg {

struct DecompositionResult {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::uint64_t fes_used = 0;
  std::uint64_t fes_grouping = 0;
  std::uint64_t fes_refinement = 0;
  std::vector<IndexSet> subcomponents;
  /// shared[i] lists the members of subcomponents[i] that are shared.
  std::vector<IndexSet> shared;
  /// False when a group flagged as a union could not be split.
  bool refined = true;
};

/// Pairwise interaction structure from DG2.
class InteractionMatrix {
 public:
  explicit InteractionMatrix(std::size_t n = 0) : n_(n), adjacency_(n * n, 0), raw_(n * n, 0.0) {}

  std::size_t dimension() const noexcept { return n_; }
  bool interacts(Index i, Index j) const noexcept { return adjacency_[i * n_ + j] != 0; }
  double raw(Index i, Index j) const noexcept { return raw_[i * n_ + j]; }
  void set(Index i, Index j, double delta, bool interacting) noexcept;
  IndexSet neighbours(Index i) const;
  std::size_t edge_count() const noexcept;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<double> raw_;
};

struct OedgOptions {
  DetectionOptions detection;
  /// Forces the first detected variable of the grouping stage.
  std::optional<Index> first_seed;
  /// Lets SUD test groups whose shared variables meet only one other shared
  /// group (the ends of a line) by probing the neighbourhood of a shared
  /// variable inside the group.
  bool probe_one_sided = true;
};

/// Formed subcomponents and their aligned shared groups.
struct Grouping {
  std::vector<IndexSet> subcomponents;
  std::vector<IndexSet> shared;
};

/// Stage I: neighbourhood groups of random ungrouped variables.
Grouping grouping_stage(DetectionContext& ctx, Rng& rng, const OedgOptions& options = {});

/// Stage II: SUD/SD until no group is flagged. Returns false if some flagged
/// group could not be split.
bool refinement_stage(Grouping& grouping, DetectionContext& ctx, Rng& rng, const OedgOptions& options = {});

DecompositionResult oedg(const OverlappingProblem& problem, std::uint64_t seed, const OedgOptions& options,
                         EvaluationCounter& counter);
DecompositionResult oedg(const OverlappingProblem& problem, std::uint64_t seed, const OedgOptions& options = {});

/// Subcomponent union detection for group i. `subcomponent` enables the
/// one-sided probe; pass nullptr for the plain variable-to-set checks.
bool sud(std::size_t i, const std::vector<IndexSet>& shared, DetectionContext& ctx,
         const IndexSet* subcomponent = nullptr);

/// Subcomponent detection: splits group i in place and appends the split-off
/// subcomponent. Returns false (leaving the group as-is) when no detected
/// variable yields a strict split.
bool sd(std::size_t i, std::vector<IndexSet>& subcomponents, std::vector<IndexSet>& shared, const IndexSet& twice_shared,
        const IndexSet& all_variables, DetectionContext& ctx, Rng& rng);

/// Variables occurring in exactly two of the shared groups.
IndexSet occurring_twice(const std::vector<IndexSet>& shared);

inline constexpr std::size_t kRdg3DefaultCap = 50;

DecompositionResult rdg3(const OverlappingProblem& problem, std::size_t eps_n, std::uint64_t seed,
                         const DetectionOptions& detection = {});

struct OrdgOptions {
  DetectionOptions detection;
  std::optional<Index> first_seed;
};

DecompositionResult ordg(const OverlappingProblem& problem, std::uint64_t seed, const OrdgOptions& options = {});

struct Dg2Options {
  enum class Threshold { kPairwise, kGlobal };
  Threshold threshold = Threshold::kPairwise;
};

/// All pairwise checks with shared evaluation points: n(n+1)/2 + 1 FEs.
std::pair<InteractionMatrix, DecompositionResult> dg2(const OverlappingProblem& problem, const Dg2Options& options = {});

/// Maximal cliques of the interaction graph, ordered by smallest member.
std::vector<IndexSet> maximal_cliques(const InteractionMatrix& matrix);

/// Members of each group that also appear in another group.
std::vector<IndexSet> shared_members(const std::vector<IndexSet>& groups);

/// JSON with 1-based, sorted index arrays.
std::string decomposition_to_json(const DecompositionResult& result);
DecompositionResult decomposition_from_json(const std::string& text);

}  // namespace oedg
