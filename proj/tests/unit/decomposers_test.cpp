#include <gtest/gtest.h>

#include <algorithm>

#include "oedg/decomposers.hpp"
#include "oedg/metrics.hpp"
#include "support.hpp"

namespace oedg {
namespace {

using testing::labels;
using testing::sorted;

std::vector<IndexSet> truth_of(const OverlappingProblem& p) { return p.ground_truth().subcomponents(); }

TEST(Oedg, RecoversFourBlockInstance) {
  const auto p = testing::compose(testing::four_block_groups(), 18, 7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = oedg(p, seed);
    EXPECT_EQ(sorted(r.subcomponents), sorted(truth_of(p))) << "seed " << seed;
    EXPECT_TRUE(r.refined);
    ASSERT_EQ(r.shared.size(), r.subcomponents.size());
    for (std::size_t i = 0; i < r.subcomponents.size(); ++i) {
      const auto& truth = p.ground_truth();
      for (std::size_t t = 0; t < truth.size(); ++t) {
        if (truth.subcomponents()[t] == r.subcomponents[i]) EXPECT_EQ(r.shared[i], truth.shared_variables()[t]);
      }
    }
  }
}

TEST(Oedg, SeparableBlocksHaveNoSharedVariables) {
  const std::vector<IndexSet> groups{{0, 1, 2}, {3, 4, 5, 6}, {7, 8}};
  const auto p = testing::compose(groups, 9, 3);
  const auto r = oedg(p, 1);
  EXPECT_EQ(sorted(r.subcomponents), groups);
  for (const auto& s : r.shared) EXPECT_TRUE(s.empty());
}

TEST(Oedg, BridgeSeedIsMergedThenSplit) {
  const auto p = testing::compose(testing::bridge_groups(), 12, 5);
  OedgOptions options;
  options.first_seed = 5;  // x6
  EvaluationCounter counter;
  DetectionContext ctx(p, counter);
  Rng rng(3);
  auto grouping = grouping_stage(ctx, rng, options);
  ASSERT_FALSE(grouping.subcomponents.empty());
  EXPECT_EQ(grouping.subcomponents.front(), labels({3, 5, 6, 7, 8, 9, 10}));
  EXPECT_TRUE(refinement_stage(grouping, ctx, rng, options));
  EXPECT_EQ(sorted(grouping.subcomponents), sorted(testing::bridge_groups()));

  const auto full = oedg(p, 3, options);
  EXPECT_EQ(sorted(full.subcomponents), sorted(testing::bridge_groups()));
}

TEST(Sud, SharedVariablesOfOneSubcomponent) {
  const auto p = testing::compose(testing::bridge_groups(), 12, 5);
  EvaluationCounter counter;
  DetectionContext ctx(p, counter);
  const auto& shared = p.ground_truth().shared_variables();
  ASSERT_EQ(shared[1], labels({3, 6}));
  EXPECT_FALSE(sud(1, shared, ctx));
  EXPECT_FALSE(sud(1, shared, ctx, &p.ground_truth().subcomponents()[1]));
}

TEST(Sud, SharedVariablesOfDifferentSubcomponents) {
  const auto p = testing::compose(testing::bridge_groups(), 12, 5);
  EvaluationCounter counter;
  DetectionContext ctx(p, counter);
  const std::vector<IndexSet> shared{labels({3}), labels({3, 9}), labels({9})};
  EXPECT_TRUE(sud(1, shared, ctx));
}

TEST(Sud, DisjointSharedGroupsAreNotUnions) {
  const auto p = testing::compose(testing::bridge_groups(), 12, 5);
  EvaluationCounter counter;
  DetectionContext ctx(p, counter);
  const std::vector<IndexSet> shared{labels({3}), labels({6}), labels({9})};
  const auto before = counter.total();
  EXPECT_FALSE(sud(1, shared, ctx));
  EXPECT_EQ(counter.total(), before);
}

TEST(Sud, OneSidedProbeFindsEndMerge) {
  // Stage I from x2 on a 3-block line merges nothing, but a group {L u A}
  // only shows one shared side.
  const auto p = testing::compose(testing::bridge_groups(), 12, 5);
  EvaluationCounter counter;
  DetectionContext ctx(p, counter);
  const IndexSet merged = labels({1, 2, 3, 4, 5, 6, 7});
  const std::vector<IndexSet> shared{labels({6}), labels({6, 9}), labels({9})};
  EXPECT_FALSE(sud(0, shared, ctx));
  EXPECT_TRUE(sud(0, shared, ctx, &merged));
}

TEST(Sd, SplitsBridgeGroup) {
  const auto p = testing::compose(testing::bridge_groups(), 12, 5);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    EvaluationCounter counter;
    DetectionContext ctx(p, counter);
    Rng rng(seed);
    std::vector<IndexSet> groups{labels({1, 2, 3, 4}), labels({3, 5, 6, 7, 8, 9, 10}), labels({9, 11, 12})};
    std::vector<IndexSet> shared{labels({3}), labels({3, 9}), labels({9})};
    const IndexSet twice = occurring_twice(shared);
    EXPECT_EQ(twice, labels({3, 9}));
    ASSERT_TRUE(sd(1, groups, shared, twice, full_set(12), ctx, rng));
    ASSERT_EQ(groups.size(), 4u);
    EXPECT_EQ(sorted({groups[1], groups[3]}), sorted({labels({3, 5, 6, 7}), labels({6, 8, 9, 10})}));
    const IndexSet split_a = groups[1] == labels({3, 5, 6, 7}) ? shared[1] : shared[3];
    EXPECT_EQ(split_a, labels({3, 6}));
  }
}

TEST(Sd, AtomicGroupCannotBeSplit) {
  const auto p = testing::compose(testing::bridge_groups(), 12, 5);
  EvaluationCounter counter;
  DetectionContext ctx(p, counter);
  Rng rng(1);
  std::vector<IndexSet> groups = truth_of(p);
  std::vector<IndexSet> shared = p.ground_truth().shared_variables();
  EXPECT_FALSE(sd(1, groups, shared, occurring_twice(shared), full_set(12), ctx, rng));
  EXPECT_EQ(groups, truth_of(p));
}

TEST(Sd, RepeatedSplitsRecoverNeighbourhoodGroup) {
  const auto p = build_line(testing::line_config("8x3", 2, 9));
  const auto& truth = truth_of(p);
  const IndexSet all = full_set(p.dimension());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EvaluationCounter counter;
    DetectionContext ctx(p, counter);
    Rng rng(seed);
    // Neighbourhood of a variable shared by the first two blocks.
    const Index bridge = set_intersection(truth[0], truth[1]).front();
    std::vector<IndexSet> groups{interact_neighbours(bridge, all, ctx)};
    ASSERT_EQ(groups[0], set_union(truth[0], truth[1]));
    groups.push_back(truth[2]);
    std::vector<IndexSet> shared{interact_ov(groups[0], set_difference(all, groups[0]), ctx),
                                 interact_ov(groups[1], set_difference(all, groups[1]), ctx)};
    while (sd(0, groups, shared, occurring_twice(shared), all, ctx, rng)) {
    }
    EXPECT_EQ(sorted(groups), sorted(truth)) << "seed " << seed;
  }
}

TEST(Oedg, DeterministicForASeed) {
  const auto p = build_ring(testing::line_config("9x6", 2, 4));
  const auto a = oedg(p, 42);
  const auto b = oedg(p, 42);
  EXPECT_EQ(a.subcomponents, b.subcomponents);
  EXPECT_EQ(a.shared, b.shared);
  EXPECT_EQ(a.fes_used, b.fes_used);
  EXPECT_EQ(decomposition_to_json(a), decomposition_to_json(b));
}

TEST(Oedg, PhaseTalliesAddUp) {
  const auto p = build_line(testing::line_config("9x6", 2, 4));
  EvaluationCounter counter;
  const auto r = oedg(p, 1, {}, counter);
  EXPECT_EQ(r.fes_used, counter.total());
  EXPECT_EQ(r.fes_grouping, counter.phase_total(Phase::kGrouping));
  EXPECT_EQ(r.fes_refinement, counter.phase_total(Phase::kRefinement));
  EXPECT_EQ(r.fes_grouping + r.fes_refinement, r.fes_used);
}

TEST(Oedg, RecoversDeskSuites) {
  for (const char* name : {"LTO", "RTO"}) {
    const auto problems = suite(name, Scale::kDesk, 3);
    for (const auto& p : problems) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto r = oedg(p, seed);
        EXPECT_EQ(sorted(r.subcomponents), sorted(truth_of(p))) << p.metadata().name << " seed " << seed;
      }
    }
  }
}

TEST(Rdg3, SeparableGivesSingletons) {
  const auto p = testing::sphere(7);
  for (std::size_t cap : {1, 3, 50}) {
    const auto r = rdg3(p, cap, 2);
    EXPECT_EQ(r.subcomponents.size(), 7u);
    for (const auto& g : r.subcomponents) EXPECT_EQ(g.size(), 1u);
  }
}

TEST(Rdg3, LargeCapGivesOneGroup) {
  const auto p = build_line(testing::line_config("12x5", 2, 3));
  const auto r = rdg3(p, p.dimension(), 1);
  ASSERT_EQ(r.subcomponents.size(), 1u);
  EXPECT_EQ(r.subcomponents.front(), full_set(p.dimension()));
}

TEST(Rdg3, SmallCapSplitsTrueSubcomponents) {
  const auto p = build_line(testing::line_config("12x5", 2, 3));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = rdg3(p, 12, seed);
    std::size_t capped = 0;
    for (const auto& g : r.subcomponents) {
      EXPECT_LE(g.size(), 12u + 2u * 12u);
      capped += g.size() >= 12 ? 1 : 0;
    }
    EXPECT_GE(capped, 1u);
    EXPECT_LT(decomposition_accuracy(p.ground_truth(), r), 1.0);
    for (const auto& s : r.shared) EXPECT_TRUE(s.empty());
  }
}

TEST(Ordg, TwoSubcomponentLine) {
  const auto p = build_line(testing::line_config("10x2", 1, 6));
  const auto shared = p.ground_truth().all_shared();
  ASSERT_EQ(shared.size(), 1u);
  OrdgOptions options;
  options.first_seed = set_difference(truth_of(p)[0], shared).front();
  const auto r = ordg(p, 1, options);
  EXPECT_EQ(sorted(r.subcomponents), sorted(truth_of(p)));
}

TEST(Ordg, SharedSeedMergesFirstGroup) {
  const auto p = build_line(testing::line_config("10x3", 2, 6));
  OrdgOptions options;
  options.first_seed = set_intersection(truth_of(p)[0], truth_of(p)[1]).front();
  const auto r = ordg(p, 1, options);
  EXPECT_EQ(r.subcomponents.front(), set_union(truth_of(p)[0], truth_of(p)[1]));
  EXPECT_LT(decomposition_accuracy(p.ground_truth(), r), 1.0);
}

TEST(Ordg, SingleSubcomponent) {
  const auto p = testing::compose({full_set(6)}, 6, 2);
  const auto r = ordg(p, 4);
  ASSERT_EQ(r.subcomponents.size(), 1u);
  EXPECT_EQ(r.subcomponents.front(), full_set(6));
  EXPECT_TRUE(r.shared.front().empty());
}

TEST(Dg2, ChainEdges) {
  const auto [theta, r] = dg2(testing::example_chain());
  EXPECT_TRUE(theta.interacts(0, 1));
  EXPECT_TRUE(theta.interacts(1, 2));
  EXPECT_FALSE(theta.interacts(0, 2));
  EXPECT_EQ(theta.edge_count(), 2u);
  EXPECT_EQ(r.fes_used, 7u);
  EXPECT_EQ(sorted(r.subcomponents), (std::vector<IndexSet>{{0, 1}, {1, 2}}));
  EXPECT_EQ(r.shared, (std::vector<IndexSet>{{1}, {1}}));
}

TEST(Dg2, FeFormula) {
  for (std::size_t n : {2, 5, 18, 40}) {
    const auto p = testing::sphere(n);
    EXPECT_EQ(dg2(p).second.fes_used, n * (n + 1) / 2 + 1);
  }
}

TEST(Dg2, RecoversDeskInstancesAndMatchesOedg) {
  for (const auto& p : {build_line(testing::line_config("8x4+5x2", 2, 1)),
                        build_ring(testing::line_config("9x5", 2, 2, BaseKind::kSchwefel12))}) {
    const auto [theta, r] = dg2(p);
    EXPECT_EQ(sorted(r.subcomponents), sorted(truth_of(p)));
    // The clique graph of OEDG's groups equals the detected pair graph.
    const auto o = oedg(p, 9);
    for (Index i = 0; i < p.dimension(); ++i) {
      for (Index j = i + 1; j < p.dimension(); ++j) {
        bool together = false;
        for (const auto& g : o.subcomponents) together = together || (contains(g, i) && contains(g, j));
        EXPECT_EQ(together, theta.interacts(i, j)) << i << "," << j;
      }
    }
  }
}

TEST(Dg2, ComplexTopologyPairGraphIsExact) {
  TopologyConfig c;
  c.topology = Topology::kComplex;
  c.subcomponents = 6;
  c.subcomponent_size = 8;
  c.overlap = 2;
  c.probability = 0.2;
  c.seed = 5;
  const auto p = build_complex(c);
  const auto [theta, r] = dg2(p);
  for (Index i = 0; i < p.dimension(); ++i) {
    for (Index j = i + 1; j < p.dimension(); ++j) {
      bool together = false;
      for (const auto& g : truth_of(p)) together = together || (contains(g, i) && contains(g, j));
      EXPECT_EQ(together, theta.interacts(i, j)) << i << "," << j;
    }
  }
  // Cyclic overlaps add cliques made of shared variables only.
  for (const auto& g : truth_of(p)) {
    EXPECT_NE(std::find(r.subcomponents.begin(), r.subcomponents.end(), g), r.subcomponents.end());
  }
  EXPECT_GE(r.subcomponents.size(), truth_of(p).size());
}

TEST(Dg2, GlobalThresholdAgreesOnDeskInstance) {
  const auto p = build_line(testing::line_config("8x4", 2, 1));
  Dg2Options options;
  options.threshold = Dg2Options::Threshold::kGlobal;
  EXPECT_EQ(sorted(dg2(p, options).second.subcomponents), sorted(truth_of(p)));
}

TEST(MaximalCliques, SmallGraph) {
  InteractionMatrix m(6);
  for (auto [i, j] : std::vector<std::pair<Index, Index>>{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}}) m.set(i, j, 1, true);
  EXPECT_EQ(maximal_cliques(m), (std::vector<IndexSet>{{0, 1, 2}, {2, 3}, {3, 4}, {5}}));
}

TEST(DecompositionJson, RoundTripsOneBased) {
  DecompositionResult r;
  r.algorithm = "oedg";
  r.seed = 12;
  r.fes_used = 99;
  r.subcomponents = {{0, 1, 2}, {2, 3}};
  r.shared = {{2}, {2}};
  const auto text = decomposition_to_json(r);
  EXPECT_NE(text.find("[1,2,3]"), std::string::npos);
  const auto back = decomposition_from_json(text);
  EXPECT_EQ(back.subcomponents, r.subcomponents);
  EXPECT_EQ(back.shared, r.shared);
  EXPECT_EQ(back.fes_used, 99u);
  EXPECT_THROW(decomposition_from_json("{\"algorithm\": 1}"), StructuralError);
}

}  // namespace
}  // namespace oedg
