#include "pmc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "pmc/log.hpp"

namespace pmc {

std::string csv_header() { return "instance,formulation,cuts,status,primal,dual,gap_pct,nodes,cuts_added,time_s,seed"; }

namespace {

template <class T>
std::string cell(const std::optional<T>& v) {
  return v ? format_decimal(static_cast<double>(*v)) : std::string();
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

}  // namespace

std::string csv_row(const SolveReport& r) {
  char time[32];
  std::snprintf(time, sizeof time, "%.3f", r.time_s);
  return join({r.instance, to_string(r.formulation), to_string(r.cuts), to_string(r.status), cell(r.primal),
               cell(r.dual), cell(r.gap_pct), std::to_string(r.nodes), std::to_string(r.cuts_added()), time,
               std::to_string(r.seed)});
}

std::optional<double> nominal_density(const std::string& name) {
  // rand_<n>_<d>_<interval>_<j>
  std::vector<std::string> parts;
  std::stringstream in(name);
  for (std::string part; std::getline(in, part, '_');) parts.push_back(part);
  if (parts.size() != 5 || parts[0] != "rand") return std::nullopt;
  try {
    std::size_t used = 0;
    const double d = std::stod(parts[2], &used);
    if (used != parts[2].size()) return std::nullopt;
    return d;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<BenchEntry> run_bench(const std::filesystem::path& dir, const BenchOptions& options) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());

  const std::size_t configs = options.configs.size();
  std::vector<BenchEntry> entries(files.size() * configs);
  std::vector<std::optional<Instance>> instances(files.size());
  for (std::size_t f = 0; f < files.size(); ++f) {
    std::string error;
    try {
      instances[f] = read_instance_file(files[f]);
    } catch (const std::exception& e) {
      error = e.what();
      log_line(LogLevel::Info, "skipping " + files[f].string() + ": " + error);
    }
    double density = 0.0;
    if (instances[f]) {
      const auto nominal = nominal_density(instance_name_from_path(files[f]));
      density = nominal ? *nominal : std::round(instances[f]->graph.density() * 10.0) / 10.0;
    }
    for (std::size_t c = 0; c < configs; ++c) {
      auto& entry = entries[f * configs + c];
      entry.instance = instance_name_from_path(files[f]);
      entry.config = c;
      entry.error = error;
      entry.density = density;
    }
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const auto& inst = instances[i / configs];
      if (!inst) continue;
      try {
        entries[i].report = solve(*inst, options.configs[entries[i].config]);
        log_line(LogLevel::Info, csv_row(*entries[i].report));
      } catch (const std::exception& e) {
        entries[i].error = e.what();
      }
    }
  };
  const int workers = std::max(1, options.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return entries;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchEntry>& entries, const BenchOptions& options) {
  out << csv_header() << '\n';
  struct Acc {
    int unsolved = 0;
    int with_gap = 0;
    double gap_sum = 0.0;
  };
  std::map<std::pair<double, std::size_t>, Acc> summary;
  for (const auto& e : entries) {
    const SolveConfig& c = options.configs[e.config];
    if (!e.report) {
      out << join({e.instance, to_string(c.formulation), to_string(c.cuts), "error", "", "", "", "", "", "",
                   std::to_string(c.seed)})
          << '\n';
      continue;
    }
    out << csv_row(*e.report) << '\n';
    auto& acc = summary[{e.density, e.config}];
    const auto status = e.report->status;
    if (status == SolveStatus::Optimal || status == SolveStatus::Infeasible) continue;
    ++acc.unsolved;
    if (e.report->primal && e.report->gap_pct) {
      ++acc.with_gap;
      acc.gap_sum += *e.report->gap_pct;
    }
  }
  for (const auto& [key, acc] : summary) {
    const SolveConfig& c = options.configs[key.second];
    const std::string mean = acc.with_gap ? format_decimal(acc.gap_sum / acc.with_gap) : std::string();
    out << join({"summary_d" + format_decimal(key.first), to_string(c.formulation), to_string(c.cuts),
                 "unsolved:" + std::to_string(acc.unsolved), "", "", mean, "", "", "", std::to_string(c.seed)})
        << '\n';
  }
}

}  // namespace pmc
