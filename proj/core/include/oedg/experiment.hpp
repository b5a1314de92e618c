#pragma once

// Declarative experiment runner behind the command-line tool.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oedg/bench_gen.hpp"
#include "oedg/decomposers.hpp"

namespace oedg {

struct ExperimentConfig {
  std::string mode = "grouping";
  std::string suite = "LTO";
  Scale scale = Scale::kDesk;
  std::size_t desk_factor = kDefaultDeskFactor;
  /// Descriptor file; replaces the suite when set.
  std::string instance;
  std::vector<std::string> algorithms{"oedg"};
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::string output;
  std::size_t threads = 1;
  std::size_t rdg3_eps_n = kRdg3DefaultCap;
  std::uint64_t budget = 100000;
  std::vector<std::string> plans{"oedg", "single"};
  bool reallocate = true;
  std::size_t phase_generations = 5;
  /// Grouping FEs are deducted from the optimization budget.
  bool charge_grouping = true;
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "OEDG_OUTPUT_DIR";

/// INI-style file with [experiment], [rdg3] and [optimize] sections.
ExperimentConfig load_config(const std::string& path);
/// "section.key" = "value"; unknown keys raise StructuralError naming the key.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);
void validate(const ExperimentConfig& config);
std::string config_to_json(const ExperimentConfig& config);

const std::vector<std::string>& known_algorithms();
const std::vector<std::string>& known_plan_sources();

/// Runs one named decomposer with the given seed.
DecompositionResult decompose(const std::string& algorithm, const OverlappingProblem& problem, std::uint64_t seed,
                              const ExperimentConfig& config);

/// Seed of one (problem, algorithm, run) cell.
std::uint64_t cell_seed(std::uint64_t master, const std::string& problem, const std::string& algorithm,
                        std::size_t run);

struct ExperimentSummary {
  std::size_t cells = 0;
  std::vector<std::string> failures;
  std::vector<std::string> files;
  bool complete() const noexcept { return failures.empty(); }
};

ExperimentSummary run_grouping(const ExperimentConfig& config);
ExperimentSummary run_optimization(const ExperimentConfig& config);

/// Rebuilds the summary grid of an output directory from its runs.jsonl and
/// returns it as CSV.
std::string report(const std::string& directory);

/// Writes the descriptor of `config` to `path`; with `verify` the file is
/// reloaded, rebuilt and its ground truth checked.
InstanceDescriptor gen_instance(const TopologyConfig& config, const std::string& path, bool verify);

/// Runs `count` indexed tasks on up to `threads` workers.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task);

}  // namespace oedg
