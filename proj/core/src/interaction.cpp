#include "oedg/interaction.hpp"

#include <algorithm>
#include <cmath>

namespace oedg {

double roundoff_gamma(std::size_t k) {
  const double ku = static_cast<double>(k) * kUnitRoundoff;
  if (ku >= 1.0) throw StructuralError("threshold constant too large for the fitness precision");
  return ku / (1.0 - ku);
}

std::size_t default_threshold_k(std::size_t n) noexcept {
  return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))) + 2;
}

double adaptive_threshold(const std::array<double, 4>& fitness, std::size_t n, std::size_t k) {
  double magnitude = 0.0;
  for (double f : fitness) {
    if (!std::isfinite(f)) throw StructuralError("threshold of a non-finite fitness");
    magnitude += std::abs(f);
  }
  return roundoff_gamma(k == 0 ? default_threshold_k(n) : k) * magnitude;
}

DetectionContext::DetectionContext(const OverlappingProblem& problem, EvaluationCounter& counter,
                                   DetectionOptions options)
    : problem_(problem),
      counter_(counter),
      options_(options),
      threshold_k_(options.threshold_k == 0 ? default_threshold_k(problem.dimension()) : options.threshold_k),
      base_point_(problem.lower_bound().begin(), problem.lower_bound().end()),
      scratch_(base_point_),
      base_fitness_(evaluate(problem, base_point_, counter)) {
  roundoff_gamma(threshold_k_);
}

double DetectionContext::threshold(const std::array<double, 4>& fitness) const {
  return adaptive_threshold(fitness, dimension(), threshold_k_);
}

DetectionContext::Key DetectionContext::make_key(const IndexSet& mid, const IndexSet& upper) noexcept {
  std::uint64_t a = 0x243F6A8885A308D3ULL;
  std::uint64_t b = 0x13198A2E03707344ULL;
  auto fold = [&](std::uint64_t v) {
    a = splitmix64(a ^ v);
    b = splitmix64(b + v * 0x9E3779B97F4A7C15ULL);
  };
  for (Index v : mid) fold(v);
  fold(~std::uint64_t{0});
  for (Index v : upper) fold(v);
  fold(mid.size() * 0x100000001B3ULL + upper.size());
  return {a, b};
}

double DetectionContext::evaluate_at(const IndexSet& mid, const IndexSet& upper) {
  const auto lower = problem_.lower_bound();
  const auto upper_bound = problem_.upper_bound();
  for (Index v : mid) scratch_[v] = 0.5 * (lower[v] + upper_bound[v]);
  for (Index v : upper) scratch_[v] = upper_bound[v];
  const double value = evaluate(problem_, scratch_, counter_);
  for (Index v : mid) scratch_[v] = base_point_[v];
  for (Index v : upper) scratch_[v] = base_point_[v];
  return value;
}

double DetectionContext::fitness_at(const IndexSet& mid, const IndexSet& upper) {
  if (mid.empty() && upper.empty()) return base_fitness_;
  if (!options_.memoize) return evaluate_at(mid, upper);
  const Key key = make_key(mid, upper);
  if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
  const double value = evaluate_at(mid, upper);
  memo_.emplace(key, value);
  return value;
}

InteractionVerdict DetectionContext::verdict(double f1, double f2, double f3, double f4) const {
  InteractionVerdict v;
  v.delta1 = f4 - f3;
  v.delta2 = f2 - f1;
  v.threshold_used = threshold({f1, f2, f3, f4});
  v.interacting = std::abs(v.delta1 - v.delta2) > v.threshold_used;
  return v;
}

InteractionVerdict DetectionContext::check(const IndexSet& first, const IndexSet& second) {
  static const IndexSet kNone;
  const double f2 = fitness_at(first, kNone);
  const double f3 = fitness_at(kNone, second);
  const double f4 = fitness_at(first, second);
  return verdict(base_fitness_, f2, f3, f4);
}

InteractionVerdict set_interacts(const IndexSet& x1, const IndexSet& x2, DetectionContext& ctx) {
  if (x1.empty() || x2.empty()) throw StructuralError("interaction check needs two nonempty sets");
  if (!disjoint(x1, x2)) throw StructuralError("interaction check needs disjoint sets");
  static const IndexSet kNone;
  const double f2 = ctx.evaluate_at(x1, kNone);
  const double f3 = ctx.evaluate_at(kNone, x2);
  const double f4 = ctx.evaluate_at(x1, x2);
  const double f1 = ctx.base_fitness();
  InteractionVerdict v;
  v.delta1 = f4 - f3;
  v.delta2 = f2 - f1;
  v.threshold_used = ctx.threshold({f1, f2, f3, f4});
  v.interacting = std::abs(v.delta1 - v.delta2) > v.threshold_used;
  return v;
}

namespace {

IndexSet in_range(const IndexSet& set, Index lo, Index hi) {
  const auto first = std::lower_bound(set.begin(), set.end(), lo);
  const auto last = std::lower_bound(first, set.end(), hi);
  return IndexSet(first, last);
}

// Recursive bisection over the index range [lo, hi). `node` holds the
// candidates inside the range. When a parent interacts and one half does
// not, the other half is known to interact and is not tested again.
template <typename Test>
void bisect(const IndexSet& node, Index lo, Index hi, bool known, Test& test, IndexSet& found, Rng* order) {
  if (node.empty()) return;
  if (!known && !test(node)) return;
  if (node.size() == 1) {
    found.push_back(node.front());
    return;
  }
  Index split = lo + (hi - lo) / 2;
  IndexSet left = in_range(node, lo, split);
  IndexSet right = in_range(node, split, hi);
  // Skip levels that do not separate the candidates.
  while (left.empty() || right.empty()) {
    if (left.empty()) {
      lo = split;
    } else {
      hi = split;
    }
    split = lo + (hi - lo) / 2;
    left = in_range(node, lo, split);
    right = in_range(node, split, hi);
  }
  const Index mid = split;
  const bool right_first = order != nullptr && (order->below(2) == 1);
  const std::size_t before = found.size();
  if (!right_first) {
    bisect(left, lo, mid, false, test, found, order);
    const bool left_hit = found.size() > before;
    bisect(right, mid, hi, !left_hit, test, found, order);
  } else {
    bisect(right, mid, hi, false, test, found, order);
    const bool right_hit = found.size() > before;
    bisect(left, lo, mid, !right_hit, test, found, order);
  }
}

}  // namespace

IndexSet interact_neighbours(Index seed, const IndexSet& candidates, DetectionContext& ctx) {
  const IndexSet fixed{seed};
  const IndexSet rest = set_difference(candidates, fixed);
  auto test = [&](const IndexSet& node) { return ctx.check(fixed, node).interacting; };
  IndexSet found;
  bisect(rest, 0, ctx.dimension(), false, test, found, nullptr);
  found.push_back(seed);
  return make_set(std::move(found));
}

IndexSet interact_closure(const IndexSet& seed, const IndexSet& universe, DetectionContext& ctx,
                          ClosureOptions options) {
  if (universe.empty()) throw StructuralError("interaction closure over an empty universe");
  if (seed.empty() || !is_subset(seed, universe)) throw StructuralError("closure seed must be a nonempty subset of the universe");
  IndexSet group = seed;
  IndexSet rest = set_difference(universe, group);
  while (!rest.empty() && group.size() < options.size_cap) {
    auto test = [&](const IndexSet& node) { return ctx.check(group, node).interacting; };
    IndexSet found;
    bisect(rest, 0, ctx.dimension(), false, test, found, options.visit_order);
    if (found.empty()) break;
    found = make_set(std::move(found));
    group = set_union(group, found);
    rest = set_difference(rest, found);
  }
  return group;
}

IndexSet interact_ov(const IndexSet& x1, const IndexSet& x2, DetectionContext& ctx) {
  if (x1.empty()) throw StructuralError("overlap detection on an empty group");
  if (!disjoint(x1, x2)) throw StructuralError("overlap detection needs disjoint sets");
  if (x2.empty()) return {};
  auto test = [&](const IndexSet& node) { return ctx.check(x2, node).interacting; };
  IndexSet found;
  bisect(x1, 0, ctx.dimension(), false, test, found, nullptr);
  return make_set(std::move(found));
}

}  // namespace oedg
