#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pmc/bnc.hpp"

namespace pmc {

/// instance,formulation,cuts,status,primal,dual,gap_pct,nodes,cuts_added,time_s,seed
std::string csv_header();
std::string csv_row(const SolveReport& report);

struct BenchEntry {
  std::string instance;  ///< file stem
  std::size_t config = 0;
  std::optional<SolveReport> report;
  std::string error;  ///< set when the file could not be read
  double density = 0.0;
};

struct BenchOptions {
  std::vector<SolveConfig> configs{SolveConfig{}};
  int workers = 1;
};

/// Solves every regular file of `dir` (sorted by name) under every config,
/// instance-major. Rows come back in that order whatever the worker count.
std::vector<BenchEntry> run_bench(const std::filesystem::path& dir, const BenchOptions& options);

/// Header, one row per entry, then per (density, config) one summary row
/// named summary_d<density>: status holds "unsolved:<count>" and gap_pct
/// the mean gap over unsolved runs that have a primal bound.
void write_bench_csv(std::ostream& out, const std::vector<BenchEntry>& entries, const BenchOptions& options);

/// Nominal density from a rand_<n>_<d>_<interval>_<j> name, else nullopt.
std::optional<double> nominal_density(const std::string& name);

}  // namespace pmc
