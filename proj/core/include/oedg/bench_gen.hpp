#pragma once

// Overlapping benchmark construction: base functions, shifted/rotated
// subcomponents, line/ring/complex topologies and the named suites.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oedg/problem.hpp"
#include "oedg/random.hpp"

namespace oedg {

enum class BaseKind : std::uint8_t { kSchwefel12, kElliptic, kRastrigin };

const char* base_name(BaseKind kind) noexcept;
BaseKind parse_base(const std::string& name);

/// elliptic:     sum 10^(6(i-1)/(d-1)) z_i^2
/// rastrigin:    sum z_i^2 - 10 cos(2 pi z_i) + 10
/// schwefel_1_2: sum_i (sum_{j<=i} z_j)^2
double eval_base(BaseKind kind, std::span<const double> z);

/// Factor applied to the rotated slice before the base is evaluated. The
/// rastrigin landscape is compressed so its ripples fit the [-100, 100] box.
double base_input_scale(BaseKind kind) noexcept;

inline constexpr double kDefaultLower = -100.0;
inline constexpr double kDefaultUpper = 100.0;
inline constexpr double kShiftMargin = 20.0;

/// One additive term w * base(scale * R (x[indices] - shift)).
struct SubcomponentSpec {
  /// Ordered: slice coordinate k is x[indices[k]].
  std::vector<Index> indices;
  Eigen::MatrixXd rotation;
  Eigen::VectorXd shift;
  double weight = 1.0;
  BaseKind base = BaseKind::kElliptic;
};

/// Sums the subcomponent terms. Throws StructuralError for a non-orthogonal
/// rotation, an index outside [0, n), an uncovered variable, or (for
/// conforming metadata) shifts that disagree on a shared variable.
OverlappingProblem compose_overlapping(std::vector<SubcomponentSpec> specs, std::size_t n, ProblemMetadata metadata,
                                       double lower = kDefaultLower, double upper = kDefaultUpper);

/// Random orthogonal matrix: QR of a Gaussian matrix, columns sign-corrected
/// so R has a positive diagonal.
Eigen::MatrixXd random_rotation(std::size_t d, Rng& rng);

struct TopologyConfig {
  std::string name;
  Topology topology = Topology::kLine;
  BaseKind base = BaseKind::kElliptic;
  Conflict conflict = Conflict::kConforming;
  /// Subgroup sizes in chain order (line and ring).
  std::vector<std::size_t> sizes;
  /// Variables shared by linked subcomponents (m).
  std::size_t overlap = 5;
  /// Complex topology: subcomponent count, size and extra-link probability.
  std::size_t subcomponents = 20;
  std::size_t subcomponent_size = 50;
  double probability = 0.2;
  std::uint64_t seed = 0;
};

/// "100x5+50x5+25x10" -> five 100s, five 50s, ten 25s.
std::vector<std::size_t> parse_group_sizes(const std::string& text);
std::string format_group_sizes(const std::vector<std::size_t>& sizes);

/// Throws StructuralError naming the offending field.
void validate(const TopologyConfig& config);

/// Fully resolved instance: everything needed to rebuild the evaluator.
struct InstanceDescriptor {
  struct Block {
    /// Logical positions; the variable index is permutation[position].
    std::vector<Index> positions;
    double weight = 1.0;
    std::vector<double> shift;
    /// Row-major |positions| x |positions|.
    std::vector<double> rotation;
  };

  TopologyConfig config;
  std::size_t dimension = 0;
  double lower = kDefaultLower;
  double upper = kDefaultUpper;
  std::vector<Index> permutation;
  std::vector<Block> blocks;
};

/// Logical (pre-permutation) subcomponent layout of a line or ring.
std::vector<std::vector<Index>> chain_layout(const std::vector<std::size_t>& sizes, std::size_t overlap, bool ring);

struct CtocResult {
  std::vector<IndexSet> groups;
  /// links[i] lists the earlier subcomponents g_i drew shared variables from.
  std::vector<std::vector<std::size_t>> links;
  std::size_t variables = 0;
};

/// Complex-topology construction. Oversubscribed link draws (more shared
/// variables than fit in s) are redrawn up to 20 times before failing.
CtocResult ctoc(std::size_t n_sub, std::size_t s, std::size_t m, double p, Rng& rng);

InstanceDescriptor describe(const TopologyConfig& config);
OverlappingProblem build_problem(const InstanceDescriptor& descriptor);

OverlappingProblem build_line(const TopologyConfig& config);
OverlappingProblem build_ring(const TopologyConfig& config);
OverlappingProblem build_complex(const TopologyConfig& config);

std::string descriptor_to_json(const InstanceDescriptor& descriptor);
InstanceDescriptor descriptor_from_json(const std::string& text);
void save_descriptor(const InstanceDescriptor& descriptor, const std::string& path);
InstanceDescriptor load_descriptor(const std::string& path);

enum class Scale : std::uint8_t { kPaper, kDesk };

Scale parse_scale(const std::string& name);
const char* scale_name(Scale scale) noexcept;

inline constexpr std::size_t kDefaultDeskFactor = 5;
inline constexpr std::size_t kDeskOverlap = 2;

/// Configurations of a named suite (LTO, RTO, CTO, MDO). NAO is registered
/// but raises CapabilityError.
std::vector<TopologyConfig> suite_configs(const std::string& name, Scale scale, std::uint64_t master_seed,
                                          std::size_t desk_factor = kDefaultDeskFactor);

std::vector<OverlappingProblem> suite(const std::string& name, Scale scale, std::uint64_t master_seed,
                                      std::size_t desk_factor = kDefaultDeskFactor);

}  // namespace oedg
