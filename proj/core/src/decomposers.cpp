#include "oedg/decomposers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"

namespace oedg {

void InteractionMatrix::set(Index i, Index j, double delta, bool interacting) noexcept {
  raw_[i * n_ + j] = raw_[j * n_ + i] = delta;
  adjacency_[i * n_ + j] = adjacency_[j * n_ + i] = interacting ? 1 : 0;
}

IndexSet InteractionMatrix::neighbours(Index i) const {
  IndexSet out;
  for (Index j = 0; j < n_; ++j) {
    if (j != i && interacts(i, j)) out.push_back(j);
  }
  return out;
}

std::size_t InteractionMatrix::edge_count() const noexcept {
  std::size_t edges = 0;
  for (Index i = 0; i < n_; ++i) {
    for (Index j = i + 1; j < n_; ++j) edges += interacts(i, j) ? 1 : 0;
  }
  return edges;
}

IndexSet occurring_twice(const std::vector<IndexSet>& shared) {
  std::map<Index, int> count;
  for (const auto& group : shared) {
    for (Index v : group) ++count[v];
  }
  IndexSet out;
  for (const auto& [v, c] : count) {
    if (c == 2) out.push_back(v);
  }
  return out;
}

std::vector<IndexSet> shared_members(const std::vector<IndexSet>& groups) {
  std::map<Index, int> count;
  for (const auto& group : groups) {
    for (Index v : group) ++count[v];
  }
  std::vector<IndexSet> shared;
  shared.reserve(groups.size());
  for (const auto& group : groups) {
    IndexSet s;
    for (Index v : group) {
      if (count[v] >= 2) s.push_back(v);
    }
    shared.push_back(std::move(s));
  }
  return shared;
}

bool sud(std::size_t i, const std::vector<IndexSet>& shared, DetectionContext& ctx, const IndexSet* subcomponent) {
  bool probed = false;
  for (std::size_t j = 0; j < shared.size(); ++j) {
    if (j == i) continue;
    const IndexSet common = set_intersection(shared[i], shared[j]);
    if (common.empty()) continue;
    const IndexSet rest = set_difference(shared[i], common);
    if (rest.empty()) {
      // Only one shared side is visible; a union then shows up as a shared
      // variable whose neighbourhood does not span the whole group.
      if (subcomponent != nullptr && !probed) {
        probed = true;
        const IndexSet reach = interact_neighbours(common.front(), *subcomponent, ctx);
        if (reach.size() < subcomponent->size()) return true;
      }
      continue;
    }
    for (Index x : common) {
      if (!ctx.check(IndexSet{x}, rest).interacting) return true;
    }
    for (Index x : rest) {
      if (!ctx.check(IndexSet{x}, common).interacting) return true;
    }
  }
  return false;
}

bool sd(std::size_t i, std::vector<IndexSet>& subcomponents, std::vector<IndexSet>& shared, const IndexSet& twice_shared,
        const IndexSet& all_variables, DetectionContext& ctx, Rng& rng) {
  IndexSet detected = set_intersection(shared[i], twice_shared);
  if (detected.empty()) detected = set_difference(subcomponents[i], shared[i]);
  std::vector<Index> order(detected.begin(), detected.end());
  rng.shuffle(order);

  const IndexSet merged = subcomponents[i];
  IndexSet split;
  for (Index candidate : order) {
    IndexSet reach = interact_neighbours(candidate, merged, ctx);
    if (reach.size() < merged.size()) {
      split = std::move(reach);
      break;
    }
  }
  if (split.empty()) return false;

  const IndexSet remainder = set_difference(merged, split);
  const IndexSet carried = interact_ov(split, remainder, ctx);
  IndexSet updated = set_union(remainder, carried);
  if (updated == merged) return false;

  subcomponents[i] = std::move(updated);
  shared[i] = interact_ov(subcomponents[i], set_difference(all_variables, subcomponents[i]), ctx);
  IndexSet split_shared = interact_ov(split, set_difference(all_variables, split), ctx);
  subcomponents.push_back(std::move(split));
  shared.push_back(std::move(split_shared));
  return true;
}

Grouping grouping_stage(DetectionContext& ctx, Rng& rng, const OedgOptions& options) {
  const IndexSet all = full_set(ctx.dimension());
  Grouping out;
  IndexSet ungrouped = all;
  bool first = true;
  while (!ungrouped.empty()) {
    const Index detected = (first && options.first_seed) ? *options.first_seed : rng.pick(ungrouped);
    first = false;
    IndexSet group = interact_neighbours(detected, all, ctx);
    ungrouped = set_difference(ungrouped, group);
    out.shared.push_back(interact_ov(group, set_difference(all, group), ctx));
    out.subcomponents.push_back(std::move(group));
  }
  return out;
}

bool refinement_stage(Grouping& grouping, DetectionContext& ctx, Rng& rng, const OedgOptions& options) {
  const IndexSet all = full_set(ctx.dimension());
  const IndexSet twice = occurring_twice(grouping.shared);
  auto& groups = grouping.subcomponents;
  bool refined = true;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    std::size_t splits = 0;
    while (sud(i, grouping.shared, ctx, options.probe_one_sided ? &groups[i] : nullptr)) {
      if (splits++ > all.size() || !sd(i, groups, grouping.shared, twice, all, ctx, rng)) {
        refined = false;
        break;
      }
    }
  }
  return refined;
}

DecompositionResult oedg(const OverlappingProblem& problem, std::uint64_t seed, const OedgOptions& options,
                         EvaluationCounter& counter) {
  const std::size_t n = problem.dimension();
  if (n < 2) throw StructuralError("OEDG needs at least two variables");
  if (options.first_seed && *options.first_seed >= n) throw StructuralError("forced first seed out of range");
  const std::uint64_t start = counter.total();

  DecompositionResult result;
  result.algorithm = "oedg";
  result.seed = seed;
  Rng rng(seed);
  Grouping grouping;
  {
    PhaseScope phase(counter, Phase::kGrouping);
    DetectionContext ctx(problem, counter, options.detection);
    grouping = grouping_stage(ctx, rng, options);
    result.fes_grouping = counter.total() - start;

    PhaseScope refine(counter, Phase::kRefinement);
    result.refined = refinement_stage(grouping, ctx, rng, options);
    result.fes_refinement = counter.total() - start - result.fes_grouping;
  }
  result.subcomponents = std::move(grouping.subcomponents);
  result.shared = std::move(grouping.shared);
  result.fes_used = counter.total() - start;
  return result;
}

DecompositionResult oedg(const OverlappingProblem& problem, std::uint64_t seed, const OedgOptions& options) {
  EvaluationCounter counter;
  return oedg(problem, seed, options, counter);
}

DecompositionResult rdg3(const OverlappingProblem& problem, std::size_t eps_n, std::uint64_t seed,
                         const DetectionOptions& detection) {
  if (eps_n < 1) throw StructuralError("eps_n must be at least 1");
  const std::size_t n = problem.dimension();
  EvaluationCounter counter;
  DetectionContext ctx(problem, counter, detection);
  Rng rng(seed);

  DecompositionResult result;
  result.algorithm = "rdg3";
  result.seed = seed;
  IndexSet ungrouped = full_set(n);
  ClosureOptions closure;
  closure.size_cap = eps_n;
  while (!ungrouped.empty()) {
    const Index detected = rng.pick(ungrouped);
    IndexSet group = interact_closure(IndexSet{detected}, ungrouped, ctx, closure);
    ungrouped = set_difference(ungrouped, group);
    result.subcomponents.push_back(std::move(group));
    result.shared.emplace_back();
  }
  result.fes_used = result.fes_grouping = counter.total();
  return result;
}

DecompositionResult ordg(const OverlappingProblem& problem, std::uint64_t seed, const OrdgOptions& options) {
  const std::size_t n = problem.dimension();
  if (n < 2) throw StructuralError("ORDG needs at least two variables");
  if (options.first_seed && *options.first_seed >= n) throw StructuralError("forced first seed out of range");
  EvaluationCounter counter;
  DetectionContext ctx(problem, counter, options.detection);
  Rng rng(seed);

  DecompositionResult result;
  result.algorithm = "ordg";
  result.seed = seed;
  IndexSet ungrouped = full_set(n);
  std::set<Index> pending;
  std::set<Index> expanded;
  bool first = true;

  while (!ungrouped.empty()) {
    IndexSet group;
    IndexSet carried;
    // Follow the chain: the next subcomponent grows from the lowest-index
    // shared variable that has not been expanded yet.
    while (!pending.empty() && group.empty()) {
      const Index link = *pending.begin();
      pending.erase(pending.begin());
      expanded.insert(link);
      IndexSet reach = interact_neighbours(link, set_union(ungrouped, IndexSet{link}), ctx);
      if (reach.size() > 1) {
        group = std::move(reach);
        carried = IndexSet{link};
      }
    }
    if (group.empty()) {
      const Index detected = (first && options.first_seed) ? *options.first_seed : rng.pick(ungrouped);
      group = interact_neighbours(detected, ungrouped, ctx);
    }
    first = false;
    ungrouped = set_difference(ungrouped, group);
    const IndexSet forward = ungrouped.empty() ? IndexSet{} : interact_ov(group, ungrouped, ctx);
    for (Index v : forward) {
      if (!expanded.contains(v)) pending.insert(v);
    }
    result.shared.push_back(set_union(forward, carried));
    result.subcomponents.push_back(std::move(group));
  }
  result.fes_used = result.fes_grouping = counter.total();
  return result;
}

std::vector<IndexSet> maximal_cliques(const InteractionMatrix& matrix) {
  const std::size_t n = matrix.dimension();
  std::vector<IndexSet> adjacency(n);
  for (Index v = 0; v < n; ++v) adjacency[v] = matrix.neighbours(v);

  std::vector<IndexSet> cliques;
  // Bron-Kerbosch with pivoting on explicit stacks of (R, P, X).
  struct Frame {
    IndexSet r, p, x;
  };
  std::vector<Frame> stack;
  stack.push_back({{}, full_set(n), {}});
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    if (frame.p.empty()) {
      if (frame.x.empty()) cliques.push_back(frame.r);
      continue;
    }
    Index pivot = frame.p.front();
    std::size_t best = 0;
    for (const auto* pool : {&frame.p, &frame.x}) {
      for (Index u : *pool) {
        const std::size_t degree = intersection_size(adjacency[u], frame.p);
        if (degree >= best) {
          best = degree;
          pivot = u;
        }
      }
    }
    const IndexSet branch = set_difference(frame.p, adjacency[pivot]);
    IndexSet p = frame.p;
    IndexSet x = frame.x;
    for (Index v : branch) {
      stack.push_back({set_union(frame.r, IndexSet{v}), set_intersection(p, adjacency[v]),
                       set_intersection(x, adjacency[v])});
      p = set_difference(p, IndexSet{v});
      x = set_union(x, IndexSet{v});
    }
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

std::pair<InteractionMatrix, DecompositionResult> dg2(const OverlappingProblem& problem, const Dg2Options& options) {
  const std::size_t n = problem.dimension();
  if (n < 2) throw StructuralError("DG2 needs at least two variables");
  EvaluationCounter counter;
  DetectionOptions detection;
  detection.memoize = false;
  DetectionContext ctx(problem, counter, detection);
  const double base = ctx.base_fitness();

  std::vector<double> single(n);
  for (Index i = 0; i < n; ++i) single[i] = ctx.evaluate_at({}, IndexSet{i});

  const double pair_gamma = roundoff_gamma(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
  InteractionMatrix matrix(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double both = ctx.evaluate_at({}, IndexSet{i, j});
      const double delta = std::abs((both - single[j]) - (single[i] - base));
      double eps;
      if (options.threshold == Dg2Options::Threshold::kPairwise) {
        eps = pair_gamma * std::max(std::abs(base) + std::abs(both), std::abs(single[i]) + std::abs(single[j]));
      } else {
        eps = ctx.threshold({base, single[i], single[j], both});
      }
      matrix.set(i, j, delta, delta > eps);
    }
  }

  DecompositionResult result;
  result.algorithm = "dg2";
  result.subcomponents = maximal_cliques(matrix);
  result.shared = shared_members(result.subcomponents);
  result.fes_used = result.fes_grouping = counter.total();
  return {std::move(matrix), std::move(result)};
}

namespace {

nlohmann::json one_based(const std::vector<IndexSet>& groups) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& group : groups) {
    std::vector<std::size_t> labels;
    labels.reserve(group.size());
    for (Index v : group) labels.push_back(report_index(v));
    out.push_back(std::move(labels));
  }
  return out;
}

std::vector<IndexSet> zero_based(const nlohmann::json& groups) {
  std::vector<IndexSet> out;
  for (const auto& group : groups) {
    std::vector<Index> values;
    for (const auto& label : group) {
      const auto v = label.get<std::size_t>();
      if (v == 0) throw StructuralError("decomposition indices are 1-based");
      values.push_back(v - 1);
    }
    out.push_back(make_set(std::move(values)));
  }
  return out;
}

}  // namespace

std::string decomposition_to_json(const DecompositionResult& result) {
  nlohmann::json j;
  j["algorithm"] = result.algorithm;
  j["seed"] = result.seed;
  j["fes_used"] = result.fes_used;
  j["refined"] = result.refined;
  j["index_base"] = 1;
  j["subcomponents"] = one_based(result.subcomponents);
  j["shared"] = one_based(result.shared);
  return j.dump();
}

DecompositionResult decomposition_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    DecompositionResult result;
    result.algorithm = j.at("algorithm").get<std::string>();
    result.seed = j.at("seed").get<std::uint64_t>();
    result.fes_used = j.at("fes_used").get<std::uint64_t>();
    result.refined = j.value("refined", true);
    result.subcomponents = zero_based(j.at("subcomponents"));
    result.shared = zero_based(j.at("shared"));
    if (result.subcomponents.size() != result.shared.size()) {
      throw StructuralError("subcomponents and shared groups are not aligned");
    }
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed decomposition: ") + e.what());
  }
}

}  // namespace oedg
