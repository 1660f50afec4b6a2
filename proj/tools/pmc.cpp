#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "pmc/bench.hpp"
#include "pmc/bnc.hpp"
#include "pmc/error.hpp"
#include "pmc/log.hpp"
#include "pmc/oracle.hpp"

namespace {

using namespace pmc;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;

const std::map<std::string, Formulation> kFormulations{{"af", Formulation::AF}, {"rf", Formulation::RF}};
const std::map<std::string, CutSet> kCutSets{
    {"none", CutSet::None}, {"clique", CutSet::Clique}, {"oddcycle", CutSet::OddCycle}, {"both", CutSet::Both}};
const std::map<std::string, Symmetry> kSymmetries{{"none", Symmetry::None},
                                                  {"load", Symmetry::LoadOrder},
                                                  {"label", Symmetry::Label},
                                                  {"label-strong", Symmetry::LabelStrengthened}};
const std::map<std::string, char> kIntervals{{"a", 'a'}, {"b", 'b'}, {"c", 'c'}};

struct SolveArgs {
  std::string file;
  SolveConfig config;
};

void add_config_flags(CLI::App& cmd, SolveConfig& c) {
  cmd.add_flag("--root-only,!--no-root-only", c.root_only, "separate cuts at the root only (default on)");
  cmd.add_option("--density-threshold", c.density_threshold, "minimum graph density for clique cuts")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--time-limit", c.time_limit_s, "wall-clock limit in seconds")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_option("--heuristic-budget", c.heuristic_budget_s, "warm-start budget in seconds")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_option("--seed", c.seed, "seed for the heuristics and the RF ordering")->capture_default_str();
  cmd.add_option("--symmetry", c.symmetry, "AF symmetry breaking: none|load|label|label-strong")
      ->transform(CLI::CheckedTransformer(kSymmetries, CLI::ignore_case));
}

int run_solve(const SolveArgs& args) {
  const Instance inst = read_instance_file(args.file);
  const SolveReport report = solve(inst, args.config);
  std::cout << format_report(report);
  return report.status == SolveStatus::Unknown ? kExitUnknown : kExitOk;
}

struct GenerateArgs {
  int n = 0;
  double d = 0.0;
  char interval = 'a';
  int m = 2;
  Time p_a = 1;
  Time p_b = 1;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out = ".";
};

// Instance j (1-based) uses seed + j.
int run_generate(const GenerateArgs& a, bool bipartite) {
  std::filesystem::create_directories(a.out);
  for (int j = 1; j <= a.count; ++j) {
    const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(j);
    Instance inst = bipartite ? gen_bipartite(a.n, a.d, a.m, a.p_a, a.p_b, seed)
                              : gen_erdos_renyi(a.n, a.d, named_interval(a.interval), a.m, seed);
    const std::string tag = bipartite ? std::string("bip") : std::string(1, a.interval);
    inst.name = "rand_" + std::to_string(a.n) + "_" + format_decimal(a.d) + "_" + tag + "_" + std::to_string(j);
    const auto path = std::filesystem::path(a.out) / inst.name;
    write_instance_file(path, inst);
    std::cout << path.string() << '\n';
  }
  return kExitOk;
}

struct BenchArgs {
  std::string dir;
  std::vector<std::string> formulations{"rf"};
  std::vector<std::string> cuts{"clique"};
  SolveConfig base;
  int workers = 1;
  std::string out;
};

int run_bench_command(const BenchArgs& a) {
  if (!std::filesystem::is_directory(a.dir)) throw ParameterError("not a directory: " + a.dir);
  BenchOptions options;
  options.configs.clear();
  options.workers = a.workers;
  for (const auto& f : a.formulations) {
    for (const auto& c : a.cuts) {
      SolveConfig config = a.base;
      config.formulation = kFormulations.at(f);
      config.cuts = parse_cut_set(c);
      options.configs.push_back(config);
    }
  }
  const auto entries = run_bench(a.dir, options);
  if (a.out.empty()) {
    write_bench_csv(std::cout, entries, options);
  } else {
    std::ofstream file(a.out);
    if (!file) throw ParameterError("cannot write " + a.out);
    write_bench_csv(file, entries, options);
  }
  return kExitOk;
}

struct OracleArgs {
  std::string file;
  bool dimension = false;
  std::uint64_t seed = 0;
};

int run_oracle(const OracleArgs& a) {
  const Instance inst = read_instance_file(a.file);
  const auto best = brute_force_makespan(inst);
  std::cout << "instance: " << inst.name << '\n';
  if (best) {
    std::cout << "optimal: " << *best << '\n';
  } else {
    std::cout << "infeasible\n";
  }
  if (a.dimension) {
    const auto ord = clique_distance_ordering(inst.graph, a.seed);
    const auto anti = anti_neighborhoods(inst.graph, ord);
    const auto expected = inst.jobs() + static_cast<long>(anti.complement_edges) -
                          static_cast<long>(anti.sources.size()) + 1;
    std::cout << "rf_dimension: " << rf_polytope_dimension(inst, ord) << '\n';
    std::cout << "rf_dimension_expected: " << expected << '\n';
  }
  return kExitOk;
}

struct CheckCutsArgs {
  std::string file;
  std::string formulation = "rf";
  std::uint64_t seed = 0;
};

// Separates every class at the root LP optimum and checks each cut by enumeration.
int run_check_cuts(const CheckCutsArgs& a) {
  const Instance inst = read_instance_file(a.file);
  const bool rf = kFormulations.at(a.formulation) == Formulation::RF;
  const MilpModel model = rf ? build_rf(inst, clique_distance_ordering(inst.graph, a.seed)) : build_af(inst);
  const LpSolution lp = solve_lp(model.lp);
  if (lp.status != LpStatus::Optimal) {
    std::cout << "root_lp: " << to_string(lp.status) << "\ncuts: 0\ninvalid: 0\n";
    return kExitOk;
  }
  const FractionalPoint point{lp.x, lp.objective};
  std::vector<CutRow> cuts;
  if (rf) {
    cuts = separate_clique_rf(model, point);
    for (auto& c : separate_odd_cycle_rf(model, point)) cuts.push_back(std::move(c));
  } else {
    cuts = separate_clique_af(model, point);
  }
  int invalid = 0;
  for (const auto& cut : cuts) {
    const auto verdict = check_cut_validity(model, cut.row);
    std::string support;
    for (Vertex v : cut.support) support += (support.empty() ? "" : " ") + std::to_string(v + 1);
    std::cout << to_string(cut.cls) << " {" << support << "} " << (verdict.valid ? "valid" : "INVALID") << '\n';
    invalid += verdict.valid ? 0 : 1;
  }
  std::cout << "root_lp: " << format_decimal(lp.objective) << "\ncuts: " << cuts.size() << "\ninvalid: " << invalid
            << '\n';
  return invalid == 0 ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branch-and-cut solver for parallel machine scheduling with conflicts"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance file");
  solve_cmd->add_option("file", solve_args.file, "instance file")->required();
  solve_cmd->add_option("--formulation", solve_args.config.formulation, "af|rf")
      ->transform(CLI::CheckedTransformer(kFormulations, CLI::ignore_case));
  solve_cmd->add_option("--cuts", solve_args.config.cuts, "none|clique|oddcycle|both")
      ->transform(CLI::CheckedTransformer(kCutSets, CLI::ignore_case));
  add_config_flags(*solve_cmd, solve_args.config);

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "write random instance files");
  gen_cmd->require_subcommand(1);
  auto* gnp_cmd = gen_cmd->add_subcommand("gnp", "G(n, d) with times from interval a, b or c");
  auto* bip_cmd = gen_cmd->add_subcommand("bip", "B(n, d) with times p_A and p_B");
  for (auto* cmd : {gnp_cmd, bip_cmd}) {
    cmd->add_option("--n", gen_args.n, "number of jobs")->required()->check(CLI::NonNegativeNumber);
    cmd->add_option("--d", gen_args.d, "edge probability")->required();
    cmd->add_option("--m", gen_args.m, "number of machines")->required();
    cmd->add_option("--count", gen_args.count, "number of files")->capture_default_str();
    cmd->add_option("--seed", gen_args.seed, "base seed")->capture_default_str();
    cmd->add_option("--out", gen_args.out, "output directory")->capture_default_str();
  }
  gnp_cmd->add_option("--interval", gen_args.interval, "a=[1,10], b=[1,50], c=[1,100]")
      ->required()
      ->transform(CLI::CheckedTransformer(kIntervals, CLI::ignore_case));
  bip_cmd->add_option("--pa", gen_args.p_a, "time of jobs in A")->capture_default_str();
  bip_cmd->add_option("--pb", gen_args.p_b, "time of jobs in B")->capture_default_str();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "solve every instance file in a directory; CSV on stdout");
  bench_cmd->add_option("dir", bench_args.dir, "instance directory")->required();
  bench_cmd->add_option("--formulation", bench_args.formulations, "one or more of af, rf")
      ->delimiter(',')
      ->check(CLI::IsMember({"af", "rf"}))
      ->capture_default_str();
  bench_cmd->add_option("--cuts", bench_args.cuts, "one or more of none, clique, oddcycle, both")
      ->delimiter(',')
      ->check(CLI::IsMember({"none", "clique", "oddcycle", "both"}))
      ->capture_default_str();
  bench_cmd->add_option("--workers", bench_args.workers, "concurrent solves")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "CSV file instead of stdout");
  add_config_flags(*bench_cmd, bench_args.base);

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force optimum of a small instance (n <= 12)");
  oracle_cmd->add_option("file", oracle_args.file, "instance file")->required();
  oracle_cmd->add_flag("--dimension", oracle_args.dimension, "also report the RF polytope dimension (n <= 8)");
  oracle_cmd->add_option("--seed", oracle_args.seed, "seed of the RF ordering")->capture_default_str();

  CheckCutsArgs check_args;
  auto* check_cmd = app.add_subcommand("check-cuts", "separate at the root LP and verify every cut (n <= 10)");
  check_cmd->add_option("file", check_args.file, "instance file")->required();
  check_cmd->add_option("--formulation", check_args.formulation, "af|rf")
      ->check(CLI::IsMember({"af", "rf"}))
      ->capture_default_str();
  check_cmd->add_option("--seed", check_args.seed, "seed of the RF ordering")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    if (*gnp_cmd) return run_generate(gen_args, false);
    if (*bip_cmd) return run_generate(gen_args, true);
    if (*bench_cmd) return run_bench_command(bench_args);
    if (*oracle_cmd) return run_oracle(oracle_args);
    if (*check_cmd) return run_check_cuts(check_args);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
