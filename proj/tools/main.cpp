// oedg: grouping and optimization experiments on overlapping benchmarks.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oedg/bench_gen.hpp"
#include "oedg/experiment.hpp"

namespace {

struct ExperimentFlags {
  std::string config_path;
  std::vector<std::string> settings;
  std::string suite;
  std::string scale;
  std::string instance;
  std::string algorithms;
  std::string plans;
  std::string output;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::uint64_t budget = 0;
  bool budget_given = false;
};

void add_experiment_flags(CLI::App& cmd, ExperimentFlags& flags) {
  cmd.add_option("-c,--config", flags.config_path, "Experiment config file")->check(CLI::ExistingFile);
  cmd.add_option("--set", flags.settings, "Override a config key: section.key=value");
  cmd.add_option("--suite", flags.suite, "Benchmark suite (LTO, RTO, CTO, MDO)");
  cmd.add_option("--scale", flags.scale, "paper or desk");
  cmd.add_option("--instance", flags.instance, "Instance descriptor instead of a suite");
  cmd.add_option("--runs", flags.runs, "Independent runs per cell");
  cmd.add_option("--seed", flags.seed, "Master seed");
  cmd.add_option("-o,--output", flags.output, "Output directory");
  cmd.add_option("--threads", flags.threads, "Worker threads");
}

oedg::ExperimentConfig resolve(const ExperimentFlags& flags, const std::string& mode, const CLI::App& cmd) {
  oedg::ExperimentConfig config = flags.config_path.empty() ? oedg::ExperimentConfig{} : oedg::load_config(flags.config_path);
  config.mode = mode;
  for (const auto& setting : flags.settings) {
    const auto eq = setting.find('=');
    if (eq == std::string::npos) throw oedg::StructuralError(setting + ": expected section.key=value");
    oedg::apply_setting(config, setting.substr(0, eq), setting.substr(eq + 1));
  }
  auto given = [&](const char* name) {
    const auto* option = cmd.get_option_no_throw(name);
    return option != nullptr && option->count() > 0;
  };
  if (given("--suite")) oedg::apply_setting(config, "experiment.suite", flags.suite);
  if (given("--scale")) oedg::apply_setting(config, "experiment.scale", flags.scale);
  if (given("--instance")) oedg::apply_setting(config, "experiment.instance", flags.instance);
  if (given("--runs")) config.runs = flags.runs;
  if (given("--seed")) config.seed = flags.seed;
  if (given("--output")) config.output = flags.output;
  if (given("--threads")) config.threads = flags.threads;
  if (given("--algorithms")) oedg::apply_setting(config, "experiment.algorithms", flags.algorithms);
  if (given("--plans")) oedg::apply_setting(config, "optimize.plans", flags.plans);
  if (given("--budget")) config.budget = flags.budget;
  return config;
}

int finish(const oedg::ExperimentSummary& summary) {
  for (const auto& failure : summary.failures) std::cerr << "failed: " << failure << '\n';
  std::cout << summary.cells - summary.failures.size() << "/" << summary.cells << " cells completed\n";
  return summary.complete() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlapping differential grouping experiments"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Write an instance descriptor");
  oedg::TopologyConfig topo;
  std::string topology = "line";
  std::string sizes;
  std::size_t size = 0;
  std::size_t subs = 0;
  std::string base = "elliptic";
  std::string conflict = "conforming";
  std::string out_path;
  bool verify = false;
  gen->add_option("--topology", topology, "line, ring or complex");
  gen->add_option("--sizes", sizes, "Subcomponent sizes, e.g. 12x5 or 100x5+50x5");
  gen->add_option("--size", size, "Uniform subcomponent size (with --subs)");
  gen->add_option("--subs", subs, "Number of subcomponents (with --size)");
  gen->add_option("--overlap,-m,--m", topo.overlap, "Shared variables per link");
  gen->add_option("--nsub", topo.subcomponents, "Complex topology: subcomponent count");
  gen->add_option("--s", topo.subcomponent_size, "Complex topology: subcomponent size");
  gen->add_option("--p", topo.probability, "Complex topology: extra link probability");
  gen->add_option("--seed", topo.seed, "Instance seed");
  gen->add_option("--base", base, "schwefel12, elliptic or rastrigin");
  gen->add_option("--conflict", conflict, "conforming or conflicting");
  gen->add_option("--name", topo.name, "Instance name");
  gen->add_option("--out", out_path, "Output file")->required();
  gen->add_flag("--verify", verify, "Reload and re-check the written instance");

  ExperimentFlags group_flags;
  auto* group = app.add_subcommand("group", "Run a grouping experiment");
  add_experiment_flags(*group, group_flags);
  group->add_option("--algorithms", group_flags.algorithms, "Comma-separated: oedg, rdg3, ordg, dg2");

  ExperimentFlags opt_flags;
  auto* optimize = app.add_subcommand("optimize", "Run an optimization experiment");
  add_experiment_flags(*optimize, opt_flags);
  optimize->add_option("--plans", opt_flags.plans, "Comma-separated plan sources; the first is compared to the rest");
  optimize->add_option("--budget", opt_flags.budget, "FEs per run");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Rebuild the summary table of an output directory");
  report->add_option("dir", report_dir, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      topo.topology = oedg::parse_topology(topology);
      topo.base = oedg::parse_base(base);
      if (conflict == "conforming") {
        topo.conflict = oedg::Conflict::kConforming;
      } else if (conflict == "conflicting") {
        topo.conflict = oedg::Conflict::kConflicting;
      } else {
        throw oedg::StructuralError("conflict: expected conforming or conflicting, got '" + conflict + "'");
      }
      if (!sizes.empty()) {
        topo.sizes = oedg::parse_group_sizes(sizes);
      } else if (size > 0 || subs > 0) {
        if (size == 0) throw oedg::StructuralError("size: required with --subs");
        if (subs == 0) throw oedg::StructuralError("subs: required with --size");
        topo.sizes.assign(subs, size);
      }
      if (topo.name.empty()) topo.name = topology;
      const auto descriptor = oedg::gen_instance(topo, out_path, verify);
      std::cout << out_path << ": n=" << descriptor.dimension << ", " << descriptor.blocks.size() << " subcomponents"
                << (verify ? ", verified" : "") << '\n';
      return 0;
    }
    if (group->parsed()) return finish(oedg::run_grouping(resolve(group_flags, "grouping", *group)));
    if (optimize->parsed()) return finish(oedg::run_optimization(resolve(opt_flags, "optimization", *optimize)));
    if (report->parsed()) {
      std::cout << oedg::report(report_dir);
      return 0;
    }
  } catch (const oedg::StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
