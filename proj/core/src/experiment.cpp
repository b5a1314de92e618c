#include "oedg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "json.hpp"
#include "oedg/cc_opt.hpp"
#include "oedg/metrics.hpp"

namespace oedg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  std::vector<std::string> out;
  for (auto& part : parts) {
    boost::trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    T out;
    if constexpr (std::is_floating_point_v<T>) {
      out = static_cast<T>(std::stod(value, &used));
    } else {
      if (!value.empty() && value.front() == '-') throw std::invalid_argument("negative");
      out = static_cast<T>(std::stoull(value, &used));
    }
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw StructuralError(key + ": expected a non-negative number, got '" + value + "'");
  }
}

bool parse_flag(const std::string& key, const std::string& value) {
  const std::string v = boost::to_lower_copy(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw StructuralError(key + ": expected true or false, got '" + value + "'");
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("experiment.output: cannot write " + path.string());
  out << text;
  if (!out) throw StructuralError("experiment.output: write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

fs::path output_directory(const ExperimentConfig& config) {
  std::string dir = config.output;
  if (dir.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    dir = env != nullptr && *env != '\0' ? env : "oedg-out";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw StructuralError("experiment.output: cannot create directory " + dir);
  return fs::path(dir);
}

struct NamedProblem {
  std::string name;
  OverlappingProblem problem;
};

std::vector<NamedProblem> load_problems(const ExperimentConfig& config) {
  std::vector<NamedProblem> out;
  if (!config.instance.empty()) {
    const auto descriptor = load_descriptor(config.instance);
    std::string name = descriptor.config.name.empty() ? fs::path(config.instance).stem().string() : descriptor.config.name;
    out.push_back({name, build_problem(descriptor)});
    return out;
  }
  auto problems = suite(config.suite, config.scale, config.seed, config.desk_factor);
  for (auto& p : problems) {
    std::string name = p.metadata().name;
    out.push_back({std::move(name), std::move(p)});
  }
  return out;
}

std::string status_of(const ExperimentSummary& summary) { return summary.complete() ? "complete" : "partial"; }

void write_manifest(const fs::path& dir, const ExperimentConfig& config, ExperimentSummary& summary) {
  json manifest;
  manifest["config"] = json::parse(config_to_json(config));
  manifest["status"] = status_of(summary);
  manifest["cells"] = summary.cells;
  manifest["failures"] = summary.failures;
  manifest["files"] = summary.files;
  write_file(dir / "manifest.json", manifest.dump(1) + "\n");
  summary.files.push_back("manifest.json");
}

}  // namespace

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"oedg", "rdg3", "ordg", "dg2"};
  return names;
}

const std::vector<std::string>& known_plan_sources() {
  static const std::vector<std::string> names{"oedg", "rdg3", "ordg", "dg2", "single", "truth"};
  return names;
}

void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& raw) {
  const std::string value = boost::trim_copy(raw);
  if (key == "experiment.mode") {
    config.mode = value;
  } else if (key == "experiment.suite") {
    config.suite = value;
  } else if (key == "experiment.scale") {
    try {
      config.scale = parse_scale(value);
    } catch (const std::exception&) {
      throw StructuralError(key + ": unknown scale '" + value + "'");
    }
  } else if (key == "experiment.desk_factor") {
    config.desk_factor = parse_number<std::size_t>(key, value);
  } else if (key == "experiment.instance") {
    config.instance = value;
  } else if (key == "experiment.algorithms") {
    config.algorithms = split_list(value);
  } else if (key == "experiment.runs") {
    config.runs = parse_number<std::size_t>(key, value);
  } else if (key == "experiment.seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "experiment.output") {
    config.output = value;
  } else if (key == "experiment.threads") {
    config.threads = parse_number<std::size_t>(key, value);
  } else if (key == "rdg3.eps_n") {
    config.rdg3_eps_n = parse_number<std::size_t>(key, value);
  } else if (key == "optimize.budget") {
    config.budget = parse_number<std::uint64_t>(key, value);
  } else if (key == "optimize.plans") {
    config.plans = split_list(value);
  } else if (key == "optimize.reallocate") {
    config.reallocate = parse_flag(key, value);
  } else if (key == "optimize.phase_generations") {
    config.phase_generations = parse_number<std::size_t>(key, value);
  } else if (key == "optimize.charge_grouping") {
    config.charge_grouping = parse_flag(key, value);
  } else {
    throw StructuralError(key + ": unknown configuration key");
  }
}

ExperimentConfig load_config(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw StructuralError(std::string("config: ") + e.what());
  }
  ExperimentConfig config;
  for (const auto& [section, entries] : tree) {
    if (entries.empty()) throw StructuralError(section + ": expected a [section] with keys");
    for (const auto& [key, node] : entries) apply_setting(config, section + "." + key, node.data());
  }
  return config;
}

namespace {

void reject_duplicates(std::vector<std::string> names, const std::string& key) {
  std::sort(names.begin(), names.end());
  const auto dup = std::adjacent_find(names.begin(), names.end());
  if (dup != names.end()) throw StructuralError(key + ": '" + *dup + "' is listed twice");
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.mode != "grouping" && config.mode != "optimization") {
    throw StructuralError("experiment.mode: expected grouping or optimization, got '" + config.mode + "'");
  }
  if (config.runs < 1) throw StructuralError("experiment.runs: at least one run is required");
  if (config.threads < 1) throw StructuralError("experiment.threads: at least one thread is required");
  if (config.desk_factor < 1) throw StructuralError("experiment.desk_factor: must be positive");
  if (config.rdg3_eps_n < 1) throw StructuralError("rdg3.eps_n: must be positive");
  if (config.instance.empty()) suite_configs(config.suite, config.scale, config.seed, config.desk_factor);
  if (config.mode == "grouping") {
    if (config.algorithms.empty()) throw StructuralError("experiment.algorithms: no algorithm given");
    reject_duplicates(config.algorithms, "experiment.algorithms");
    for (const auto& alg : config.algorithms) {
      const auto& known = known_algorithms();
      if (std::find(known.begin(), known.end(), alg) == known.end()) {
        throw StructuralError("experiment.algorithms: unknown algorithm '" + alg + "'");
      }
    }
  } else {
    if (config.budget == 0) throw StructuralError("optimize.budget: budget must exceed one subsolver phase");
    if (config.phase_generations < 1) throw StructuralError("optimize.phase_generations: must be positive");
    if (config.plans.empty()) throw StructuralError("optimize.plans: no plan source given");
    reject_duplicates(config.plans, "optimize.plans");
    for (const auto& plan : config.plans) {
      const auto& known = known_plan_sources();
      if (std::find(known.begin(), known.end(), plan) == known.end()) {
        throw StructuralError("optimize.plans: unknown plan source '" + plan + "'");
      }
    }
    if (config.plans.size() > 1 && config.runs < 5) {
      throw StructuralError("experiment.runs: rank-sum comparisons need at least 5 runs");
    }
  }
}

std::string config_to_json(const ExperimentConfig& config) {
  json j;
  j["mode"] = config.mode;
  j["suite"] = config.suite;
  j["scale"] = scale_name(config.scale);
  j["desk_factor"] = config.desk_factor;
  j["instance"] = config.instance;
  j["algorithms"] = config.algorithms;
  j["runs"] = config.runs;
  j["seed"] = config.seed;
  j["rdg3"] = {{"eps_n", config.rdg3_eps_n}};
  j["optimize"] = {{"budget", config.budget},
                   {"plans", config.plans},
                   {"reallocate", config.reallocate},
                   {"phase_generations", config.phase_generations},
                   {"charge_grouping", config.charge_grouping}};
  return j.dump(1);
}

std::uint64_t cell_seed(std::uint64_t master, const std::string& problem, const std::string& algorithm,
                        std::size_t run) {
  return SeedHasher(master).add(problem).add(algorithm).add(static_cast<std::uint64_t>(run)).seed();
}

DecompositionResult decompose(const std::string& algorithm, const OverlappingProblem& problem, std::uint64_t seed,
                              const ExperimentConfig& config) {
  if (algorithm == "oedg") return oedg(problem, seed);
  if (algorithm == "rdg3") return rdg3(problem, config.rdg3_eps_n, seed);
  if (algorithm == "ordg") return ordg(problem, seed);
  if (algorithm == "dg2") {
    auto result = dg2(problem).second;
    result.seed = seed;
    return result;
  }
  throw StructuralError("experiment.algorithms: unknown algorithm '" + algorithm + "'");
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

ExperimentSummary run_grouping(const ExperimentConfig& config) {
  validate(config);
  const fs::path dir = output_directory(config);
  const auto problems = load_problems(config);

  struct Cell {
    std::size_t problem = 0, algorithm = 0, run = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    GroupingScore score;
    std::string decomposition;
  };
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < problems.size(); ++p) {
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      for (std::size_t r = 0; r < config.runs; ++r) {
        Cell cell;
        cell.problem = p;
        cell.algorithm = a;
        cell.run = r;
        cell.seed = cell_seed(config.seed, problems[p].name, config.algorithms[a], r);
        cells.push_back(cell);
      }
    }
  }

  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    Cell& cell = cells[i];
    const auto& problem = problems[cell.problem].problem;
    try {
      const auto result = decompose(config.algorithms[cell.algorithm], problem, cell.seed, config);
      cell.score = {decomposition_accuracy(problem.ground_truth(), result), result.fes_used, cell.seed};
      cell.decomposition = decomposition_to_json(result);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });

  ExperimentSummary summary;
  summary.cells = cells.size();
  std::ostringstream lines;
  GroupingGrid grid;
  grid.algorithms = config.algorithms;
  std::map<std::pair<std::string, std::string>, std::vector<GroupingScore>> scores;
  for (const auto& np : problems) grid.problems.push_back(np.name);
  for (const auto& cell : cells) {
    const std::string& pname = problems[cell.problem].name;
    const std::string& alg = config.algorithms[cell.algorithm];
    json line;
    line["mode"] = "grouping";
    line["problem"] = pname;
    line["algorithm"] = alg;
    line["run"] = cell.run;
    line["seed"] = cell.seed;
    if (cell.ok) {
      line["da"] = cell.score.da;
      line["fes"] = cell.score.fes;
      line["decomposition"] = json::parse(cell.decomposition);
      scores[{pname, alg}].push_back(cell.score);
    } else {
      line["error"] = cell.error;
      summary.failures.push_back(pname + "/" + alg + "/" + std::to_string(cell.run) + ": " + cell.error);
    }
    lines << line.dump() << '\n';
  }
  for (const auto& [key, values] : scores) grid.cells[key] = aggregate(values);

  write_file(dir / "config.json", config_to_json(config) + "\n");
  write_file(dir / "runs.jsonl", lines.str());
  write_file(dir / "grouping.csv", grouping_csv(grid));
  summary.files = {"config.json", "runs.jsonl", "grouping.csv"};
  write_manifest(dir, config, summary);
  return summary;
}

namespace {

std::string wtl_csv(const std::vector<std::string>& problems, const std::vector<std::string>& plans,
                    const std::map<std::pair<std::string, std::string>, std::vector<double>>& finals) {
  std::ostringstream out;
  out << "problem,first,other,verdict,p_value,median_first,median_other\n";
  for (const auto& problem : problems) {
    for (std::size_t k = 1; k < plans.size(); ++k) {
      const auto a = finals.find({problem, plans[0]});
      const auto b = finals.find({problem, plans[k]});
      out << problem << ',' << plans[0] << ',' << plans[k] << ',';
      if (a == finals.end() || b == finals.end() || a->second.size() < 5 || b->second.size() < 5) {
        out << "NA,,,\n";
        continue;
      }
      const auto cell = rank_sum(a->second, b->second);
      out << verdict_symbol(cell.verdict) << ',' << format_double(cell.p_value) << ','
          << format_double(cell.median_a) << ',' << format_double(cell.median_b) << '\n';
    }
  }
  return out.str();
}

}  // namespace

ExperimentSummary run_optimization(const ExperimentConfig& config) {
  validate(config);
  const fs::path dir = output_directory(config);
  const auto problems = load_problems(config);
  fs::create_directories(dir / "trajectories");

  struct Cell {
    std::size_t problem = 0, plan = 0, run = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::uint64_t grouping_fes = 0;
    CcResult result;
    std::string plan_json;
  };
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < problems.size(); ++p) {
    for (std::size_t s = 0; s < config.plans.size(); ++s) {
      for (std::size_t r = 0; r < config.runs; ++r) {
        Cell cell;
        cell.problem = p;
        cell.plan = s;
        cell.run = r;
        cell.seed = cell_seed(config.seed, problems[p].name, config.plans[s], r);
        cells.push_back(std::move(cell));
      }
    }
  }

  CcOptions options;
  options.reallocate = config.reallocate;
  options.phase_generations = config.phase_generations;
  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    Cell& cell = cells[i];
    const auto& np = problems[cell.problem];
    const std::string& source = config.plans[cell.plan];
    try {
      std::vector<IndexSet> groups;
      if (source == "single") {
        groups = {full_set(np.problem.dimension())};
      } else if (source == "truth") {
        groups = np.problem.ground_truth().subcomponents();
      } else {
        auto decomposition = decompose(source, np.problem, cell.seed, config);
        cell.grouping_fes = decomposition.fes_used;
        groups = std::move(decomposition.subcomponents);
      }
      std::sort(groups.begin(), groups.end());
      std::uint64_t budget = config.budget;
      if (config.charge_grouping) {
        if (cell.grouping_fes >= budget) throw StructuralError("grouping consumed the whole optimization budget");
        budget -= cell.grouping_fes;
      }
      // Runs share their initial context across plan sources.
      const std::uint64_t opt_seed = cell_seed(config.seed, np.name, "optimize", cell.run);
      cell.result = cc_optimize(np.problem, groups, budget, opt_seed, options);
      cell.plan_json = cell.result.allocations.empty() ? std::string("null")
                                                       : plan_to_json(cell.result.allocations.back());
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });

  ExperimentSummary summary;
  summary.cells = cells.size();
  std::ostringstream lines;
  std::ostringstream table;
  table << "problem,plan,run,seed,grouping_fes,optimization_fes,best_f\n";
  std::map<std::pair<std::string, std::string>, std::vector<double>> finals;
  std::vector<std::string> names;
  for (const auto& np : problems) names.push_back(np.name);
  for (const auto& cell : cells) {
    const std::string& pname = problems[cell.problem].name;
    const std::string& source = config.plans[cell.plan];
    json line;
    line["mode"] = "optimization";
    line["problem"] = pname;
    line["plan"] = source;
    line["run"] = cell.run;
    line["seed"] = cell.seed;
    if (cell.ok) {
      line["grouping_fes"] = cell.grouping_fes;
      line["optimization_fes"] = cell.result.fes_used;
      line["best_f"] = cell.result.best_f;
      line["allocation"] = json::parse(cell.plan_json);
      const std::string file = "trajectories/" + pname + "__" + source + "__r" + std::to_string(cell.run) + ".csv";
      write_file(dir / file, trajectory_csv(cell.result.trajectory));
      line["trajectory"] = file;
      table << pname << ',' << source << ',' << cell.run << ',' << cell.seed << ',' << cell.grouping_fes << ','
            << cell.result.fes_used << ',' << format_double(cell.result.best_f) << '\n';
      finals[{pname, source}].push_back(cell.result.best_f);
    } else {
      line["error"] = cell.error;
      summary.failures.push_back(pname + "/" + source + "/" + std::to_string(cell.run) + ": " + cell.error);
    }
    lines << line.dump() << '\n';
  }

  write_file(dir / "config.json", config_to_json(config) + "\n");
  write_file(dir / "runs.jsonl", lines.str());
  write_file(dir / "optimization.csv", table.str());
  write_file(dir / "wtl.csv", wtl_csv(names, config.plans, finals));
  summary.files = {"config.json", "runs.jsonl", "optimization.csv", "wtl.csv"};
  write_manifest(dir, config, summary);
  return summary;
}

std::string report(const std::string& directory) {
  const fs::path dir(directory);
  std::istringstream lines(read_file(dir / "runs.jsonl"));
  std::vector<std::string> problems;
  std::vector<std::string> columns;
  std::map<std::pair<std::string, std::string>, std::vector<GroupingScore>> scores;
  std::map<std::pair<std::string, std::string>, std::vector<double>> finals;
  std::string mode;
  std::string text;
  auto remember = [](std::vector<std::string>& seen, const std::string& name) {
    if (std::find(seen.begin(), seen.end(), name) == seen.end()) seen.push_back(name);
  };
  while (std::getline(lines, text)) {
    if (text.empty()) continue;
    json line;
    try {
      line = json::parse(text);
    } catch (const json::exception& e) {
      throw StructuralError(std::string("runs.jsonl: ") + e.what());
    }
    mode = line.at("mode").get<std::string>();
    const std::string problem = line.at("problem").get<std::string>();
    const std::string column = line.at(mode == "grouping" ? "algorithm" : "plan").get<std::string>();
    remember(problems, problem);
    remember(columns, column);
    if (line.contains("error")) continue;
    if (mode == "grouping") {
      scores[{problem, column}].push_back(
          {line.at("da").get<double>(), line.at("fes").get<std::uint64_t>(), line.at("seed").get<std::uint64_t>()});
    } else {
      finals[{problem, column}].push_back(line.at("best_f").get<double>());
    }
  }
  if (mode.empty()) throw StructuralError("runs.jsonl: no records in " + directory);
  if (mode == "grouping") {
    GroupingGrid grid;
    grid.problems = problems;
    grid.algorithms = columns;
    for (const auto& [key, values] : scores) grid.cells[key] = aggregate(values);
    return grouping_csv(grid);
  }
  return wtl_csv(problems, columns, finals);
}

InstanceDescriptor gen_instance(const TopologyConfig& config, const std::string& path, bool verify) {
  validate(config);
  const auto descriptor = describe(config);
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  save_descriptor(descriptor, path);
  if (verify) {
    const auto reloaded = load_descriptor(path);
    const auto problem = build_problem(reloaded);
    problem.ground_truth().validate(problem.dimension());
    if (descriptor_to_json(reloaded) != descriptor_to_json(descriptor)) {
      throw StructuralError("descriptor did not survive a save/load round trip");
    }
  }
  return descriptor;
}

}  // namespace oedg
