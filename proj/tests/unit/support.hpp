#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "oedg/bench_gen.hpp"
#include "oedg/problem.hpp"
#include "oedg/random.hpp"

namespace oedg::testing {

/// 1-based labels to a 0-based set.
inline IndexSet labels(std::initializer_list<Index> one_based) {
  std::vector<Index> out;
  for (Index v : one_based) out.push_back(v - 1);
  return make_set(std::move(out));
}

/// Rotated, shifted subcomponents over the given 0-based groups.
inline OverlappingProblem compose(const std::vector<IndexSet>& groups, std::size_t n, std::uint64_t seed,
                                  BaseKind base = BaseKind::kElliptic, bool unit_weights = true) {
  Rng rng(seed);
  std::vector<double> optimum(n);
  for (double& v : optimum) v = rng.uniform(-80.0, 80.0);
  std::vector<SubcomponentSpec> specs;
  for (const auto& group : groups) {
    SubcomponentSpec spec;
    spec.indices.assign(group.begin(), group.end());
    spec.rotation = random_rotation(group.size(), rng);
    spec.shift.resize(static_cast<Eigen::Index>(group.size()));
    for (std::size_t k = 0; k < group.size(); ++k) spec.shift[static_cast<Eigen::Index>(k)] = optimum[group[k]];
    spec.weight = unit_weights ? 1.0 : std::pow(10.0, 3.0 * std::abs(rng.normal()));
    spec.base = base;
    specs.push_back(std::move(spec));
  }
  ProblemMetadata metadata;
  metadata.name = "toy";
  return compose_overlapping(std::move(specs), n, metadata);
}

/// f = (x1 - x2)^2 + (x2 - x3)^2 on [-1, 1]^3.
inline OverlappingProblem example_chain() {
  Evaluator f = [](std::span<const double> x) {
    return (x[0] - x[1]) * (x[0] - x[1]) + (x[1] - x[2]) * (x[1] - x[2]);
  };
  return OverlappingProblem({-1, -1, -1}, {1, 1, 1}, f, GroundTruth({{0, 1}, {1, 2}}), ProblemMetadata{"chain"});
}

/// f = sum x_i^2 on [-1, 1]^n.
inline OverlappingProblem sphere(std::size_t n) {
  Evaluator f = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  std::vector<IndexSet> singles;
  for (Index i = 0; i < n; ++i) singles.push_back({i});
  return OverlappingProblem(std::vector<double>(n, -1.0), std::vector<double>(n, 1.0), f, GroundTruth(singles),
                            ProblemMetadata{"sphere"});
}

/// Four subcomponents over 18 variables: C, B, A, D.
inline std::vector<IndexSet> four_block_groups() {
  return {labels({1, 2, 3, 4, 5, 6}), labels({3, 4, 7, 8, 9, 10}), labels({8, 9, 11, 12, 13, 14}),
          labels({12, 13, 15, 16, 17, 18})};
}

/// L, A, B, R: a short line where x6 bridges A and B.
inline std::vector<IndexSet> bridge_groups() {
  return {labels({1, 2, 3, 4}), labels({3, 5, 6, 7}), labels({6, 8, 9, 10}), labels({9, 11, 12})};
}

inline TopologyConfig line_config(const std::string& sizes, std::size_t m, std::uint64_t seed,
                                  BaseKind base = BaseKind::kElliptic) {
  TopologyConfig config;
  config.name = "line";
  config.topology = Topology::kLine;
  config.base = base;
  config.sizes = parse_group_sizes(sizes);
  config.overlap = m;
  config.seed = seed;
  return config;
}

/// Sorted copy of a group list, for multiset comparison.
inline std::vector<IndexSet> sorted(std::vector<IndexSet> groups) {
  std::sort(groups.begin(), groups.end());
  return groups;
}

}  // namespace oedg::testing
