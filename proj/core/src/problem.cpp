#include "oedg/problem.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace oedg {

const char* phase_name(Phase phase) noexcept {
  switch (phase) {
    case Phase::kGrouping:
      return "grouping";
    case Phase::kRefinement:
      return "refinement";
    case Phase::kOptimization:
      return "optimization";
  }
  return "unknown";
}

void EvaluationCounter::increment() noexcept {
  total_.fetch_add(1, std::memory_order_relaxed);
  per_phase_[static_cast<std::size_t>(phase_)].fetch_add(1, std::memory_order_relaxed);
}

std::uint64_t EvaluationCounter::phase_total(Phase phase) const noexcept {
  return per_phase_[static_cast<std::size_t>(phase)].load(std::memory_order_relaxed);
}

GroundTruth::GroundTruth(std::vector<IndexSet> subcomponents) : subcomponents_(std::move(subcomponents)) {
  std::map<Index, int> occurrences;
  for (auto& group : subcomponents_) {
    group = make_set(group);
    for (Index v : group) ++occurrences[v];
  }
  shared_.reserve(subcomponents_.size());
  for (const auto& group : subcomponents_) {
    IndexSet shared;
    for (Index v : group) {
      if (occurrences[v] >= 2) shared.push_back(v);
    }
    shared_.push_back(std::move(shared));
  }
}

IndexSet GroundTruth::all_shared() const {
  IndexSet out;
  for (const auto& shared : shared_) out = set_union(out, shared);
  return out;
}

void GroundTruth::validate(std::size_t n) const {
  IndexSet covered;
  for (const auto& group : subcomponents_) {
    if (group.empty()) throw StructuralError("ground truth contains an empty subcomponent");
    if (group.back() >= n) throw StructuralError("ground truth index out of range");
    covered = set_union(covered, group);
  }
  if (covered.size() != n) {
    std::ostringstream msg;
    msg << "ground truth covers " << covered.size() << " of " << n << " variables";
    throw StructuralError(msg.str());
  }
  std::vector<int> occurrences(n, 0);
  for (const auto& group : subcomponents_) {
    for (Index v : group) ++occurrences[v];
  }
  for (std::size_t i = 0; i < subcomponents_.size(); ++i) {
    if (!is_subset(shared_[i], subcomponents_[i])) throw StructuralError("shared set escapes its subcomponent");
    for (Index v : subcomponents_[i]) {
      if ((occurrences[v] >= 2) != contains(shared_[i], v)) {
        throw StructuralError("shared set disagrees with occurrence counts");
      }
    }
  }
}

double overlapping_degree(const GroundTruth& truth, std::size_t n) {
  if (n == 0) throw StructuralError("overlapping degree of a zero-dimensional problem");
  return static_cast<double>(truth.all_shared().size()) / static_cast<double>(n);
}

const char* topology_name(Topology topology) noexcept {
  switch (topology) {
    case Topology::kLine:
      return "line";
    case Topology::kRing:
      return "ring";
    case Topology::kComplex:
      return "complex";
    case Topology::kCustom:
      return "custom";
  }
  return "custom";
}

Topology parse_topology(const std::string& name) {
  if (name == "line") return Topology::kLine;
  if (name == "ring") return Topology::kRing;
  if (name == "complex") return Topology::kComplex;
  if (name == "custom") return Topology::kCustom;
  throw StructuralError("unknown topology '" + name + "'");
}

const char* conflict_name(Conflict conflict) noexcept {
  return conflict == Conflict::kConforming ? "conforming" : "conflicting";
}

OverlappingProblem::OverlappingProblem(std::vector<double> lower, std::vector<double> upper, Evaluator evaluator,
                                       GroundTruth truth, ProblemMetadata metadata)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      evaluator_(std::move(evaluator)),
      truth_(std::move(truth)),
      metadata_(std::move(metadata)) {
  if (lower_.empty()) throw StructuralError("problem dimension must be positive");
  if (lower_.size() != upper_.size()) throw StructuralError("bound vectors differ in length");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) throw StructuralError("lower bound must be below upper bound");
  }
  if (!evaluator_) throw StructuralError("problem has no evaluator");
}

double evaluate(const OverlappingProblem& problem, std::span<const double> x, EvaluationCounter& counter) {
  if (x.size() != problem.dimension()) {
    std::ostringstream msg;
    msg << "point has " << x.size() << " coordinates, problem expects " << problem.dimension();
    throw StructuralError(msg.str());
  }
  const auto lower = problem.lower_bound();
  const auto upper = problem.upper_bound();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) {
      counter.flag_out_of_bounds();
      break;
    }
  }
  counter.increment();
  const double value = problem.raw(x);
  if (std::isnan(value)) {
    throw EvaluationError("objective returned NaN", std::vector<double>(x.begin(), x.end()));
  }
  return value;
}

}  // namespace oedg
