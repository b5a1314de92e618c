#include "oedg/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace oedg {

double decomposition_accuracy(const GroundTruth& truth, const std::vector<IndexSet>& formed) {
  if (truth.size() == 0) throw StructuralError("decomposition accuracy needs a nonempty ground truth");
  if (formed.empty()) throw StructuralError("decomposition accuracy needs formed groups");
  std::size_t hit = 0;
  std::size_t total = 0;
  for (const auto& group : truth.subcomponents()) {
    std::size_t best = 0;
    for (const auto& candidate : formed) best = std::max(best, intersection_size(group, candidate));
    hit += best;
    total += group.size();
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

double decomposition_accuracy(const GroundTruth& truth, const DecompositionResult& formed) {
  return decomposition_accuracy(truth, formed.subcomponents);
}

Aggregate aggregate(const std::vector<GroupingScore>& scores) {
  if (scores.empty()) throw StructuralError("aggregate of no runs");
  Aggregate out;
  out.runs = scores.size();
  for (const auto& s : scores) {
    out.mean_da += s.da;
    out.mean_fes += static_cast<double>(s.fes);
  }
  const double count = static_cast<double>(scores.size());
  out.mean_da /= count;
  out.mean_fes /= count;
  if (scores.size() > 1) {
    double ss = 0.0;
    for (const auto& s : scores) ss += (s.da - out.mean_da) * (s.da - out.mean_da);
    out.std_da = std::sqrt(ss / (count - 1.0));
  }
  return out;
}

char verdict_symbol(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::kWin:
      return 'W';
    case Verdict::kLoss:
      return 'L';
    case Verdict::kTie:
      break;
  }
  return 'T';
}

double median(std::vector<double> values) {
  if (values.empty()) throw StructuralError("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ComparisonCell rank_sum(const std::vector<double>& a, const std::vector<double>& b, double alpha) {
  if (a.size() < 5 || b.size() < 5) throw StructuralError("rank-sum test needs at least 5 points per sample");
  for (const auto* sample : {&a, &b}) {
    for (double v : *sample) {
      if (std::isnan(v)) throw StructuralError("rank-sum test on NaN");
    }
  }
  ComparisonCell cell;
  cell.median_a = median(a);
  cell.median_b = median(b);

  struct Item {
    double value;
    bool from_a;
  };
  std::vector<Item> pooled;
  pooled.reserve(a.size() + b.size());
  for (double v : a) pooled.push_back({v, true});
  for (double v : b) pooled.push_back({v, false});
  std::sort(pooled.begin(), pooled.end(), [](const Item& x, const Item& y) { return x.value < y.value; });

  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double total = n1 + n2;
  double rank_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
    const double t = static_cast<double>(j - i);
    const double mid_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].from_a) rank_a += mid_rank;
    }
    tie_term += t * t * t - t;
    i = j;
  }
  const double u = rank_a - n1 * (n1 + 1.0) / 2.0;
  const double mean_u = n1 * n2 / 2.0;
  const double var_u = n1 * n2 / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
  if (var_u <= 0.0) return cell;
  const double z = (u - mean_u) / std::sqrt(var_u);
  cell.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
  if (cell.p_value < alpha) {
    if (cell.median_a < cell.median_b) cell.verdict = Verdict::kWin;
    if (cell.median_a > cell.median_b) cell.verdict = Verdict::kLoss;
  }
  return cell;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string grouping_csv(const GroupingGrid& grid) {
  std::ostringstream out;
  out << "problem";
  for (const auto& alg : grid.algorithms) out << ',' << alg << "_da," << alg << "_fes";
  out << '\n';
  for (const auto& problem : grid.problems) {
    out << problem;
    for (const auto& alg : grid.algorithms) {
      const auto it = grid.cells.find({problem, alg});
      if (it == grid.cells.end()) {
        out << ",,";
      } else {
        out << ',' << format_double(it->second.mean_da) << ',' << format_double(it->second.mean_fes);
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace oedg
