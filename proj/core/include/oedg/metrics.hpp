#pragma once

// Decomposition accuracy, run aggregation and the rank-sum comparison used
// for W/T/L tables.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oedg/decomposers.hpp"
#include "oedg/problem.hpp"

namespace oedg {

/// Sum over true groups of the largest overlap with any formed group,
/// divided by the total size of the true groups. Uses formed N only.
double decomposition_accuracy(const GroundTruth& truth, const std::vector<IndexSet>& formed);
double decomposition_accuracy(const GroundTruth& truth, const DecompositionResult& formed);

struct GroupingScore {
  double da = 0.0;
  std::uint64_t fes = 0;
  std::uint64_t run_seed = 0;
};

struct Aggregate {
  double mean_da = 0.0;
  double mean_fes = 0.0;
  double std_da = 0.0;
  std::size_t runs = 0;
};

Aggregate aggregate(const std::vector<GroupingScore>& scores);

enum class Verdict : std::uint8_t { kWin, kTie, kLoss };

char verdict_symbol(Verdict verdict) noexcept;

struct ComparisonCell {
  Verdict verdict = Verdict::kTie;
  double p_value = 1.0;
  double median_a = 0.0;
  double median_b = 0.0;
};

double median(std::vector<double> values);

/// Two-sided Mann-Whitney U (normal approximation with tie correction).
/// Lower values are better: W means `a` is significantly lower.
ComparisonCell rank_sum(const std::vector<double>& a, const std::vector<double>& b, double alpha = 0.05);

/// Rows are problems in first-seen order; columns are algorithm x {DA, FEs}.
struct GroupingGrid {
  std::vector<std::string> problems;
  std::vector<std::string> algorithms;
  std::map<std::pair<std::string, std::string>, Aggregate> cells;
};

std::string grouping_csv(const GroupingGrid& grid);

/// Shortest round-trip text of a double ("." decimal separator).
std::string format_double(double value);

}  // namespace oedg
