#include "oedg/cc_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "oedg/metrics.hpp"

namespace oedg {

AllocationPlan allocate_shared(const std::vector<IndexSet>& subcomponents, const ContributionLedger& ledger,
                               std::size_t n) {
  if (ledger.contribution.size() != subcomponents.size()) {
    throw StructuralError("contribution ledger does not match the subcomponents");
  }
  std::vector<std::size_t> owner(n, subcomponents.size());
  for (std::size_t i = 0; i < subcomponents.size(); ++i) {
    for (Index v : subcomponents[i]) {
      if (v >= n) throw StructuralError("subcomponent index out of range");
      const std::size_t current = owner[v];
      if (current == subcomponents.size() || ledger.contribution[i] > ledger.contribution[current]) owner[v] = i;
    }
  }
  AllocationPlan plan;
  plan.groups.resize(subcomponents.size());
  for (Index v = 0; v < n; ++v) {
    if (owner[v] == subcomponents.size()) {
      throw StructuralError("variable " + std::to_string(report_index(v)) + " is in no subcomponent");
    }
    plan.groups[owner[v]].push_back(v);
  }
  return plan;
}

AllocationPlan allocate_shared(const DecompositionResult& decomposition, const ContributionLedger& ledger,
                               std::size_t n) {
  if (decomposition.subcomponents.size() != decomposition.shared.size()) {
    throw StructuralError("subcomponents and shared groups are not aligned");
  }
  return allocate_shared(decomposition.subcomponents, ledger, n);
}

void validate_plan(const AllocationPlan& plan, std::size_t n) {
  std::vector<int> seen(n, 0);
  for (const auto& group : plan.groups) {
    for (Index v : group) {
      if (v >= n) throw StructuralError("plan index out of range");
      ++seen[v];
    }
  }
  for (Index v = 0; v < n; ++v) {
    if (seen[v] != 1) throw StructuralError("plan does not partition the variables");
  }
}

std::size_t population_size(std::size_t dimension) {
  if (dimension == 0) throw StructuralError("subsolver on an empty group");
  return 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(dimension))));
}

namespace {

// Carries step sizes over by variable when reallocation changes the group.
void remap_state(SubsolverState& state, const IndexSet& group) {
  if (state.group.empty()) {
    state.sigma = 0.3;
    state.diag.assign(group.size(), 1.0);
    state.path.assign(group.size(), 0.0);
    state.group = group;
    return;
  }
  double mean_diag = 0.0;
  for (double v : state.diag) mean_diag += v;
  mean_diag /= static_cast<double>(state.diag.size());
  std::vector<double> diag(group.size(), mean_diag);
  std::vector<double> path(group.size(), 0.0);
  for (std::size_t k = 0; k < group.size(); ++k) {
    const auto it = std::lower_bound(state.group.begin(), state.group.end(), group[k]);
    if (it != state.group.end() && *it == group[k]) {
      const auto old = static_cast<std::size_t>(it - state.group.begin());
      diag[k] = state.diag[old];
      path[k] = state.path[old];
    }
  }
  state.group = group;
  state.diag = std::move(diag);
  state.path = std::move(path);
}

}  // namespace

double subsolver_phase(const OverlappingProblem& problem, const IndexSet& group, ContextVector& ctx,
                       std::size_t phase_fes, Rng& rng, EvaluationCounter& counter, SubsolverState& state,
                       std::uint64_t budget) {
  const std::size_t d = group.size();
  const std::size_t lambda = population_size(d);
  if (phase_fes < lambda) throw StructuralError("phase shorter than one generation");
  if (state.group != group) remap_state(state, group);

  const auto lower = problem.lower_bound();
  const auto upper = problem.upper_bound();
  const std::size_t mu = lambda / 2;
  std::vector<double> weights(mu);
  for (std::size_t i = 0; i < mu; ++i) {
    weights[i] = std::log(static_cast<double>(mu) + 0.5) - std::log(static_cast<double>(i + 1));
  }
  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= weight_sum;
  double mueff = 0.0;
  for (double w : weights) mueff += w * w;
  mueff = 1.0 / mueff;

  const double dd = static_cast<double>(d);
  const double cs = (mueff + 2.0) / (dd + mueff + 5.0);
  const double ds = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (dd + 1.0)) - 1.0) + cs;
  const double chi = std::sqrt(dd) * (1.0 - 1.0 / (4.0 * dd) + 1.0 / (21.0 * dd * dd));
  const double cmu =
      std::min(1.0, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((dd + 2.0) * (dd + 2.0) + mueff) * (dd + 2.0) / 3.0);

  auto to_unit = [&](std::size_t k, double x) { return (x - lower[group[k]]) / (upper[group[k]] - lower[group[k]]); };
  auto from_unit = [&](std::size_t k, double u) { return lower[group[k]] + u * (upper[group[k]] - lower[group[k]]); };

  std::vector<double> mean(d);
  for (std::size_t k = 0; k < d; ++k) mean[k] = to_unit(k, ctx.x[group[k]]);

  const double start = ctx.fitness;
  std::vector<double> trial = ctx.x;
  std::vector<std::vector<double>> samples(lambda, std::vector<double>(d));
  std::vector<double> fitness(lambda);
  std::vector<std::size_t> order(lambda);
  std::size_t used = 0;

  while (used < phase_fes && counter.total() < budget) {
    std::size_t produced = 0;
    for (std::size_t s = 0; s < lambda && used < phase_fes && counter.total() < budget; ++s) {
      for (std::size_t k = 0; k < d; ++k) {
        const double u = mean[k] + state.sigma * std::sqrt(state.diag[k]) * rng.normal();
        samples[s][k] = std::clamp(u, 0.0, 1.0);
        trial[group[k]] = from_unit(k, samples[s][k]);
      }
      fitness[s] = evaluate(problem, trial, counter);
      ++used;
      ++produced;
      if (fitness[s] < ctx.fitness) {
        ctx.fitness = fitness[s];
        for (Index v : group) ctx.x[v] = trial[v];
      }
    }
    for (Index v : group) trial[v] = ctx.x[v];
    if (produced < lambda) break;

    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    std::vector<double> next(d, 0.0);
    for (std::size_t i = 0; i < mu; ++i) {
      for (std::size_t k = 0; k < d; ++k) next[k] += weights[i] * samples[order[i]][k];
    }
    double path_norm = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double step = (next[k] - mean[k]) / state.sigma;
      state.path[k] = (1.0 - cs) * state.path[k] + std::sqrt(cs * (2.0 - cs) * mueff) * step / std::sqrt(state.diag[k]);
      path_norm += state.path[k] * state.path[k];
      double rank_mu = 0.0;
      for (std::size_t i = 0; i < mu; ++i) {
        const double y = (samples[order[i]][k] - mean[k]) / state.sigma;
        rank_mu += weights[i] * y * y;
      }
      state.diag[k] = std::clamp((1.0 - cmu) * state.diag[k] + cmu * rank_mu, 1e-20, 1e4);
    }
    state.sigma *= std::exp(cs / ds * (std::sqrt(path_norm) / chi - 1.0));
    state.sigma = std::clamp(state.sigma, 1e-15, 1.0);
    mean = std::move(next);
  }
  return start - ctx.fitness;
}

CcResult cc_optimize(const OverlappingProblem& problem, const std::vector<IndexSet>& subcomponents,
                     std::uint64_t budget, std::uint64_t seed, const CcOptions& options) {
  if (budget == 0) throw StructuralError("budget must exceed one subsolver phase");
  if (subcomponents.empty()) throw StructuralError("optimization needs at least one group");
  if (options.phase_generations == 0) throw StructuralError("phase length must be positive");
  const std::size_t n = problem.dimension();
  Rng rng(seed);
  EvaluationCounter counter;
  PhaseScope phase(counter, Phase::kOptimization);

  ContextVector ctx;
  ctx.x.resize(n);
  const auto lower = problem.lower_bound();
  const auto upper = problem.upper_bound();
  for (Index v = 0; v < n; ++v) ctx.x[v] = rng.uniform(lower[v], upper[v]);
  ctx.fitness = evaluate(problem, ctx.x, counter);

  CcResult result;
  result.trajectory.points.emplace_back(counter.total(), ctx.fitness);

  ContributionLedger ledger;
  ledger.contribution.assign(subcomponents.size(), 0.0);
  AllocationPlan plan = allocate_shared(subcomponents, ledger, n);
  std::vector<SubsolverState> states(subcomponents.size());

  auto phase_length = [&](const IndexSet& group) { return options.phase_generations * population_size(group.size()); };
  std::size_t first = 0;
  while (plan.groups[first].empty()) ++first;
  const bool fits = counter.total() + phase_length(plan.groups[first]) <= budget;

  std::size_t cycle = 0;
  while (fits && counter.total() < budget) {
    result.allocations.push_back(plan);
    for (std::size_t i = 0; i < plan.groups.size() && counter.total() < budget; ++i) {
      const IndexSet& group = plan.groups[i];
      if (group.empty()) continue;
      ledger.contribution[i] = subsolver_phase(problem, group, ctx, phase_length(group), rng, counter, states[i], budget);
      result.trajectory.points.emplace_back(counter.total(), ctx.fitness);
    }
    result.ledgers.push_back(ledger);
    ++cycle;
    if (options.reallocate || cycle == 1) {
      plan = allocate_shared(subcomponents, ledger, n);
    }
  }

  result.best_x = ctx.x;
  result.best_f = ctx.fitness;
  result.fes_used = counter.total();
  return result;
}

std::string plan_to_json(const AllocationPlan& plan) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& group : plan.groups) {
    std::vector<std::size_t> labels;
    for (Index v : group) labels.push_back(report_index(v));
    groups.push_back(labels);
  }
  nlohmann::json j;
  j["index_base"] = 1;
  j["groups"] = groups;
  return j.dump();
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::ostringstream out;
  out << "fes,best_f\n";
  for (const auto& [fes, f] : trajectory.points) out << fes << ',' << format_double(f) << '\n';
  return out.str();
}

}  // namespace oedg
