#include "oedg/bench_gen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace oedg {

using nlohmann::json;

const char* base_name(BaseKind kind) noexcept {
  switch (kind) {
    case BaseKind::kSchwefel12:
      return "schwefel_1_2";
    case BaseKind::kElliptic:
      return "elliptic";
    case BaseKind::kRastrigin:
      return "rastrigin";
  }
  return "elliptic";
}

BaseKind parse_base(const std::string& name) {
  if (name == "schwefel_1_2" || name == "schwefel") return BaseKind::kSchwefel12;
  if (name == "elliptic") return BaseKind::kElliptic;
  if (name == "rastrigin") return BaseKind::kRastrigin;
  throw StructuralError("unknown base function '" + name + "'");
}

double eval_base(BaseKind kind, std::span<const double> z) {
  if (z.empty()) throw StructuralError("base function of an empty vector");
  const std::size_t d = z.size();
  double sum = 0.0;
  switch (kind) {
    case BaseKind::kElliptic:
      for (std::size_t i = 0; i < d; ++i) {
        const double exponent = d == 1 ? 0.0 : 6.0 * static_cast<double>(i) / static_cast<double>(d - 1);
        sum += std::pow(10.0, exponent) * z[i] * z[i];
      }
      break;
    case BaseKind::kRastrigin:
      for (double zi : z) sum += zi * zi - 10.0 * std::cos(2.0 * std::numbers::pi * zi) + 10.0;
      break;
    case BaseKind::kSchwefel12: {
      double prefix = 0.0;
      for (double zi : z) {
        prefix += zi;
        sum += prefix * prefix;
      }
      break;
    }
  }
  return sum;
}

double base_input_scale(BaseKind kind) noexcept { return kind == BaseKind::kRastrigin ? 0.05 : 1.0; }

namespace {

struct CompiledBlock {
  std::vector<Index> indices;
  Eigen::MatrixXd rotation;
  Eigen::VectorXd shift;
  double weight;
  BaseKind base;
  double scale;
  // Elliptic coefficients are precomputed; pow() dominates otherwise.
  Eigen::VectorXd elliptic;
};

class ComposedObjective {
 public:
  explicit ComposedObjective(std::vector<CompiledBlock> blocks) : blocks_(std::move(blocks)) {}

  double operator()(std::span<const double> x) const {
    double total = 0.0;
    Eigen::VectorXd slice;
    Eigen::VectorXd z;
    for (const auto& block : blocks_) {
      const auto d = static_cast<Eigen::Index>(block.indices.size());
      slice.resize(d);
      for (Eigen::Index k = 0; k < d; ++k) slice[k] = x[block.indices[static_cast<std::size_t>(k)]] - block.shift[k];
      z.noalias() = block.rotation * slice;
      if (block.scale != 1.0) z *= block.scale;
      double term;
      if (block.base == BaseKind::kElliptic) {
        term = block.elliptic.dot(z.cwiseAbs2());
      } else {
        term = eval_base(block.base, std::span<const double>(z.data(), static_cast<std::size_t>(d)));
      }
      total += block.weight * term;
    }
    return total;
  }

 private:
  std::vector<CompiledBlock> blocks_;
};

}  // namespace

OverlappingProblem compose_overlapping(std::vector<SubcomponentSpec> specs, std::size_t n, ProblemMetadata metadata,
                                       double lower, double upper) {
  if (n == 0) throw StructuralError("problem dimension must be positive");
  if (specs.empty()) throw StructuralError("no subcomponents to compose");
  std::vector<IndexSet> groups;
  std::vector<CompiledBlock> blocks;
  groups.reserve(specs.size());
  blocks.reserve(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    auto& spec = specs[s];
    const auto d = static_cast<Eigen::Index>(spec.indices.size());
    if (d == 0) throw StructuralError("subcomponent " + std::to_string(s) + " is empty");
    if (spec.rotation.rows() != d || spec.rotation.cols() != d) {
      throw StructuralError("subcomponent " + std::to_string(s) + " rotation has the wrong shape");
    }
    if (spec.shift.size() != d) throw StructuralError("subcomponent " + std::to_string(s) + " shift has the wrong length");
    const Eigen::MatrixXd gram = spec.rotation.transpose() * spec.rotation;
    if ((gram - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9) {
      throw StructuralError("subcomponent " + std::to_string(s) + " rotation is not orthogonal");
    }
    if (!(spec.weight > 0.0)) throw StructuralError("subcomponent weights must be positive");
    for (Index v : spec.indices) {
      if (v >= n) throw StructuralError("subcomponent index out of range");
    }
    IndexSet group = make_set(spec.indices);
    if (group.size() != spec.indices.size()) throw StructuralError("subcomponent repeats an index");
    groups.push_back(std::move(group));

    CompiledBlock block{spec.indices, spec.rotation, spec.shift, spec.weight, spec.base, base_input_scale(spec.base),
                        Eigen::VectorXd()};
    if (spec.base == BaseKind::kElliptic) {
      block.elliptic.resize(d);
      for (Eigen::Index i = 0; i < d; ++i) {
        block.elliptic[i] = d == 1 ? 1.0 : std::pow(10.0, 6.0 * static_cast<double>(i) / static_cast<double>(d - 1));
      }
    }
    blocks.push_back(std::move(block));
  }

  GroundTruth truth(groups);
  truth.validate(n);

  if (metadata.conflict == Conflict::kConforming) {
    std::map<Index, double> optimum;
    for (const auto& spec : specs) {
      for (std::size_t k = 0; k < spec.indices.size(); ++k) {
        const auto [it, inserted] = optimum.emplace(spec.indices[k], spec.shift[static_cast<Eigen::Index>(k)]);
        if (!inserted && it->second != spec.shift[static_cast<Eigen::Index>(k)]) {
          throw StructuralError("conforming problem has disagreeing shifts on a shared variable");
        }
      }
    }
  }

  metadata.overlapping_degree = overlapping_degree(truth, n);
  auto objective = std::make_shared<const ComposedObjective>(std::move(blocks));
  return OverlappingProblem(std::vector<double>(n, lower), std::vector<double>(n, upper),
                            [objective](std::span<const double> x) { return (*objective)(x); }, std::move(truth),
                            std::move(metadata));
}

Eigen::MatrixXd random_rotation(std::size_t d, Rng& rng) {
  const auto size = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd gaussian(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) gaussian(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < size; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

std::vector<std::size_t> parse_group_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream terms(text);
  std::string term;
  while (std::getline(terms, term, '+')) {
    const auto x = term.find_first_of("xX*");
    try {
      std::size_t used = 0;
      const std::string head = term.substr(0, x);
      const auto size = std::stoul(head, &used);
      if (used != head.size()) throw std::invalid_argument(term);
      std::size_t count = 1;
      if (x != std::string::npos) {
        const std::string tail = term.substr(x + 1);
        count = std::stoul(tail, &used);
        if (used != tail.size()) throw std::invalid_argument(term);
      }
      if (size == 0 || count == 0) throw StructuralError("group sizes must be positive: '" + text + "'");
      sizes.insert(sizes.end(), count, size);
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const StructuralError*>(&e) != nullptr) throw;
      throw StructuralError("cannot parse group sizes '" + text + "'");
    }
  }
  if (sizes.empty()) throw StructuralError("cannot parse group sizes '" + text + "'");
  return sizes;
}

std::string format_group_sizes(const std::vector<std::size_t>& sizes) {
  std::string out;
  std::size_t i = 0;
  while (i < sizes.size()) {
    std::size_t j = i;
    while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
    if (!out.empty()) out += '+';
    out += std::to_string(sizes[i]) + "x" + std::to_string(j - i);
    i = j;
  }
  return out;
}

void validate(const TopologyConfig& config) {
  if (config.topology == Topology::kComplex) {
    if (config.subcomponents < 2) throw StructuralError("nsub: complex topology needs at least 2 subcomponents");
    if (config.subcomponent_size == 0) throw StructuralError("s: subcomponent size must be positive");
    if (config.overlap >= config.subcomponent_size) throw StructuralError("m: overlap must be below the subcomponent size");
    if (!(config.probability >= 0.0 && config.probability <= 1.0)) throw StructuralError("p: probability must lie in [0, 1]");
    return;
  }
  if (config.topology != Topology::kLine && config.topology != Topology::kRing) {
    throw StructuralError("topology: only line, ring and complex instances can be generated");
  }
  if (config.sizes.empty()) throw StructuralError("sizes: at least one subcomponent is required");
  const auto smallest = *std::min_element(config.sizes.begin(), config.sizes.end());
  if (config.overlap >= smallest) throw StructuralError("overlap: must be below the smallest subgroup size");
  if (config.topology == Topology::kRing && config.sizes.size() < 3) {
    throw StructuralError("subs: ring topology needs at least 3 subcomponents");
  }
  const bool ring = config.topology == Topology::kRing;
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    const bool two_sided = ring || (i > 0 && i + 1 < config.sizes.size());
    if (two_sided && config.sizes[i] < 2 * config.overlap) {
      throw StructuralError("overlap: subgroup " + std::to_string(i + 1) + " is shared with two neighbours and needs at least " +
                            std::to_string(2 * config.overlap) + " variables");
    }
  }
}

std::vector<std::vector<Index>> chain_layout(const std::vector<std::size_t>& sizes, std::size_t overlap, bool ring) {
  std::vector<std::vector<Index>> blocks;
  blocks.reserve(sizes.size());
  std::size_t start = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::vector<Index> block;
    const bool closing = ring && i + 1 == sizes.size();
    const std::size_t own = closing ? sizes[i] - overlap : sizes[i];
    for (std::size_t k = 0; k < own; ++k) block.push_back(start + k);
    if (closing) {
      for (std::size_t k = 0; k < overlap; ++k) block.push_back(k);
    }
    blocks.push_back(std::move(block));
    start += sizes[i] - overlap;
  }
  return blocks;
}

namespace {

std::vector<Index> sample_without_replacement(const IndexSet& from, std::size_t count, Rng& rng) {
  std::vector<Index> pool(from.begin(), from.end());
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

CtocResult ctoc(std::size_t n_sub, std::size_t s, std::size_t m, double p, Rng& rng) {
  if (n_sub < 2) throw StructuralError("nsub: CTOC needs at least 2 subcomponents");
  if (m >= s) throw StructuralError("m: overlap must be below the subcomponent size");
  if (!(p >= 0.0 && p <= 1.0)) throw StructuralError("p: probability must lie in [0, 1]");
  constexpr int kMaxLinkDraws = 20;

  CtocResult result;
  result.groups.push_back(full_set(s));
  result.links.emplace_back();
  std::size_t next_fresh = s;

  for (std::size_t i = 1; i < n_sub; ++i) {
    const auto k = static_cast<std::size_t>(rng.below(result.groups.size()));
    const auto base_pick = sample_without_replacement(result.groups[k], m, rng);
    IndexSet shared;
    std::vector<std::size_t> links;
    bool fits = false;
    for (int attempt = 0; attempt < kMaxLinkDraws && !fits; ++attempt) {
      shared = make_set(base_pick);
      links.assign(1, k);
      for (std::size_t j = 0; j < result.groups.size(); ++j) {
        if (j == k) continue;
        if (rng.uniform() < p) {
          shared = set_union(shared, make_set(sample_without_replacement(result.groups[j], m, rng)));
          links.push_back(j);
        }
      }
      fits = shared.size() <= s;
    }
    if (!fits) throw StructuralError("CTOC link draws exceed the subcomponent size; choose another seed");
    IndexSet group = shared;
    while (group.size() < s) group.push_back(next_fresh++);
    result.groups.push_back(make_set(std::move(group)));
    result.links.push_back(std::move(links));
  }
  result.variables = next_fresh;
  return result;
}

InstanceDescriptor describe(const TopologyConfig& config) {
  validate(config);
  Rng rng(config.seed);
  InstanceDescriptor out;
  out.config = config;

  std::vector<std::vector<Index>> layout;
  if (config.topology == Topology::kComplex) {
    auto built = ctoc(config.subcomponents, config.subcomponent_size, config.overlap, config.probability, rng);
    for (auto& group : built.groups) layout.emplace_back(group.begin(), group.end());
    out.dimension = built.variables;
  } else {
    layout = chain_layout(config.sizes, config.overlap, config.topology == Topology::kRing);
    std::size_t n = 0;
    for (const auto& block : layout) {
      for (Index pos : block) n = std::max(n, pos + 1);
    }
    out.dimension = n;
  }
  const std::size_t n = out.dimension;

  out.permutation = full_set(n);
  rng.shuffle(out.permutation);

  std::vector<int> occurrences(n, 0);
  for (const auto& block : layout) {
    for (Index pos : block) ++occurrences[pos];
  }
  std::vector<double> optimum(n);
  for (auto& value : optimum) value = rng.uniform(out.lower + kShiftMargin, out.upper - kShiftMargin);

  for (const auto& positions : layout) {
    InstanceDescriptor::Block block;
    block.positions = positions;
    block.weight = std::pow(10.0, 3.0 * std::abs(rng.normal()));
    const auto rotation = random_rotation(positions.size(), rng);
    block.rotation.reserve(positions.size() * positions.size());
    for (Eigen::Index r = 0; r < rotation.rows(); ++r) {
      for (Eigen::Index c = 0; c < rotation.cols(); ++c) block.rotation.push_back(rotation(r, c));
    }
    for (Index pos : positions) {
      const bool own_optimum = config.conflict == Conflict::kConflicting && occurrences[pos] >= 2;
      block.shift.push_back(own_optimum ? rng.uniform(out.lower + kShiftMargin, out.upper - kShiftMargin) : optimum[pos]);
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

OverlappingProblem build_problem(const InstanceDescriptor& descriptor) {
  std::vector<SubcomponentSpec> specs;
  specs.reserve(descriptor.blocks.size());
  for (const auto& block : descriptor.blocks) {
    const auto d = static_cast<Eigen::Index>(block.positions.size());
    if (block.rotation.size() != block.positions.size() * block.positions.size() ||
        block.shift.size() != block.positions.size()) {
      throw StructuralError("descriptor block has inconsistent sizes");
    }
    SubcomponentSpec spec;
    for (Index pos : block.positions) {
      if (pos >= descriptor.permutation.size()) throw StructuralError("descriptor position outside the permutation");
      spec.indices.push_back(descriptor.permutation[pos]);
    }
    spec.rotation = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        block.rotation.data(), d, d);
    spec.shift = Eigen::Map<const Eigen::VectorXd>(block.shift.data(), d);
    spec.weight = block.weight;
    spec.base = descriptor.config.base;
    specs.push_back(std::move(spec));
  }
  ProblemMetadata metadata;
  metadata.name = descriptor.config.name;
  metadata.topology = descriptor.config.topology;
  metadata.conflict = descriptor.config.conflict;
  return compose_overlapping(std::move(specs), descriptor.dimension, std::move(metadata), descriptor.lower,
                             descriptor.upper);
}

OverlappingProblem build_line(const TopologyConfig& config) {
  auto line = config;
  line.topology = Topology::kLine;
  return build_problem(describe(line));
}

OverlappingProblem build_ring(const TopologyConfig& config) {
  auto ring = config;
  ring.topology = Topology::kRing;
  return build_problem(describe(ring));
}

OverlappingProblem build_complex(const TopologyConfig& config) {
  auto complex = config;
  complex.topology = Topology::kComplex;
  return build_problem(describe(complex));
}

namespace {

json config_to_json(const TopologyConfig& c) {
  json j;
  j["name"] = c.name;
  j["topology"] = topology_name(c.topology);
  j["base"] = base_name(c.base);
  j["conflict"] = conflict_name(c.conflict);
  j["sizes"] = c.sizes;
  j["overlap"] = c.overlap;
  j["subcomponents"] = c.subcomponents;
  j["subcomponent_size"] = c.subcomponent_size;
  j["probability"] = c.probability;
  j["seed"] = c.seed;
  return j;
}

TopologyConfig config_from_json(const json& j) {
  TopologyConfig c;
  c.name = j.at("name").get<std::string>();
  c.topology = parse_topology(j.at("topology").get<std::string>());
  c.base = parse_base(j.at("base").get<std::string>());
  const auto conflict = j.at("conflict").get<std::string>();
  if (conflict != "conforming" && conflict != "conflicting") throw StructuralError("unknown conflict flag '" + conflict + "'");
  c.conflict = conflict == "conforming" ? Conflict::kConforming : Conflict::kConflicting;
  c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
  c.overlap = j.at("overlap").get<std::size_t>();
  c.subcomponents = j.at("subcomponents").get<std::size_t>();
  c.subcomponent_size = j.at("subcomponent_size").get<std::size_t>();
  c.probability = j.at("probability").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

std::string descriptor_to_json(const InstanceDescriptor& d) {
  json j;
  j["config"] = config_to_json(d.config);
  j["dimension"] = d.dimension;
  j["lower"] = d.lower;
  j["upper"] = d.upper;
  j["permutation"] = d.permutation;
  json blocks = json::array();
  for (const auto& block : d.blocks) {
    blocks.push_back({{"positions", block.positions},
                      {"weight", block.weight},
                      {"shift", block.shift},
                      {"rotation", block.rotation}});
  }
  j["blocks"] = std::move(blocks);
  return j.dump(1);
}

InstanceDescriptor descriptor_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    InstanceDescriptor d;
    d.config = config_from_json(j.at("config"));
    d.dimension = j.at("dimension").get<std::size_t>();
    d.lower = j.at("lower").get<double>();
    d.upper = j.at("upper").get<double>();
    d.permutation = j.at("permutation").get<std::vector<Index>>();
    for (const auto& b : j.at("blocks")) {
      InstanceDescriptor::Block block;
      block.positions = b.at("positions").get<std::vector<Index>>();
      block.weight = b.at("weight").get<double>();
      block.shift = b.at("shift").get<std::vector<double>>();
      block.rotation = b.at("rotation").get<std::vector<double>>();
      d.blocks.push_back(std::move(block));
    }
    if (d.permutation.size() != d.dimension) throw StructuralError("descriptor permutation length differs from dimension");
    return d;
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed instance descriptor: ") + e.what());
  }
}

void save_descriptor(const InstanceDescriptor& descriptor, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write '" + path + "'");
  out << descriptor_to_json(descriptor) << '\n';
  if (!out) throw StructuralError("failed writing '" + path + "'");
}

InstanceDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return descriptor_from_json(buffer.str());
}

Scale parse_scale(const std::string& name) {
  if (name == "paper") return Scale::kPaper;
  if (name == "desk") return Scale::kDesk;
  throw StructuralError("unknown scale '" + name + "'");
}

const char* scale_name(Scale scale) noexcept { return scale == Scale::kPaper ? "paper" : "desk"; }

namespace {

std::vector<std::size_t> scaled(std::vector<std::size_t> sizes, std::size_t factor) {
  for (auto& s : sizes) s = std::max<std::size_t>(1, s / factor);
  return sizes;
}

constexpr BaseKind kTableBases[] = {BaseKind::kSchwefel12, BaseKind::kElliptic, BaseKind::kRastrigin};

}  // namespace

std::vector<TopologyConfig> suite_configs(const std::string& name, Scale scale, std::uint64_t master_seed,
                                          std::size_t desk_factor) {
  if (desk_factor == 0) throw StructuralError("desk factor must be positive");
  const bool desk = scale == Scale::kDesk;
  const std::size_t factor = desk ? desk_factor : 1;
  auto instance_seed = [&](std::size_t index) { return SeedHasher(master_seed).add(name).add(index).seed(); };
  std::vector<TopologyConfig> configs;

  if (name == "LTO" || name == "RTO") {
    const bool ring = name == "RTO";
    const std::size_t first = ring ? 13 : 1;
    const auto nonuniform = scaled(parse_group_sizes("100x5+50x5+25x10"), factor);
    const auto uniform = scaled(parse_group_sizes("50x20"), factor);
    const std::size_t overlap = desk ? kDeskOverlap : 5;
    std::size_t f = first;
    for (BaseKind base : kTableBases) {
      for (const auto* sizes : {&nonuniform, &uniform}) {
        for (Conflict conflict : {Conflict::kConforming, Conflict::kConflicting}) {
          TopologyConfig c;
          c.topology = ring ? Topology::kRing : Topology::kLine;
          c.base = base;
          c.conflict = conflict;
          c.sizes = *sizes;
          c.overlap = overlap;
          c.name = name + ".f" + std::to_string(f);
          c.seed = instance_seed(f);
          configs.push_back(std::move(c));
          ++f;
        }
      }
    }
    return configs;
  }

  if (name == "CTO") {
    std::size_t f = 25;
    for (BaseKind base : kTableBases) {
      for (double p : {0.1, 0.2}) {
        for (Conflict conflict : {Conflict::kConforming, Conflict::kConflicting}) {
          TopologyConfig c;
          c.topology = Topology::kComplex;
          c.base = base;
          c.conflict = conflict;
          c.subcomponents = 20;
          c.subcomponent_size = 50 / factor;
          c.overlap = desk ? kDeskOverlap : 5;
          c.probability = p;
          c.name = name + ".f" + std::to_string(f);
          c.seed = instance_seed(f);
          configs.push_back(std::move(c));
          ++f;
        }
      }
    }
    return configs;
  }

  if (name == "MDO") {
    // Subcomponent size stays at 50 so every overlap in the grid fits; the
    // desk scale shrinks the subcomponent count instead.
    const std::size_t count = std::max<std::size_t>(4, 20 / factor);
    std::size_t f = 1;
    for (Topology topology : {Topology::kLine, Topology::kRing}) {
      for (std::size_t m : {1, 3, 5, 10, 15}) {
        TopologyConfig c;
        c.topology = topology;
        c.base = BaseKind::kElliptic;
        c.sizes.assign(count, 50);
        c.overlap = m;
        c.name = name + ".f" + std::to_string(f);
        c.seed = instance_seed(f);
        configs.push_back(std::move(c));
        ++f;
      }
    }
    for (std::size_t m : {3, 5, 8, 12, 16}) {
      TopologyConfig c;
      c.topology = Topology::kComplex;
      c.base = BaseKind::kElliptic;
      c.subcomponents = count;
      c.subcomponent_size = 50;
      c.overlap = m;
      c.probability = 0.2;
      c.name = name + ".f" + std::to_string(f);
      c.seed = instance_seed(f);
      configs.push_back(std::move(c));
      ++f;
    }
    return configs;
  }

  if (name == "NAO") throw CapabilityError("NAO needs a non-additive interaction detector, which is not provided");
  throw StructuralError("unknown suite '" + name + "'");
}

std::vector<OverlappingProblem> suite(const std::string& name, Scale scale, std::uint64_t master_seed,
                                      std::size_t desk_factor) {
  std::vector<OverlappingProblem> problems;
  for (const auto& config : suite_configs(name, scale, master_seed, desk_factor)) {
    problems.push_back(build_problem(describe(config)));
  }
  return problems;
}

}  // namespace oedg
