#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmc/graph.hpp"

namespace pmc {

using Time = std::int64_t;

/// A scheduling instance: conflict graph, integral processing times, machine count.
struct Instance {
  std::string name;
  ConflictGraph graph;
  std::vector<Time> p;
  int m = 2;

  int jobs() const noexcept { return graph.order(); }
  Time total_time() const noexcept;
  Time max_time() const noexcept;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Validates p(v) >= 1 for all jobs and m >= 2; throws ParameterError otherwise.
Instance make_instance(std::string name, ConflictGraph graph, std::vector<Time> p, int m);

/// machine[v] is the 0-based machine of job v.
struct Schedule {
  std::vector<int> machine;
  Time makespan = 0;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

std::vector<Time> machine_loads(const Instance& inst, const std::vector<int>& machine);

/// Builds a schedule from an assignment, computing its makespan.
Schedule make_schedule(const Instance& inst, std::vector<int> machine);

/// Returns a description of the first violated property, or nothing if the
/// schedule is complete, uses machines 0..m-1, is conflict-free and its stored
/// makespan equals the recomputed maximum load.
std::optional<std::string> schedule_violation(const Instance& inst, const Schedule& s);
inline bool is_valid_schedule(const Instance& inst, const Schedule& s) {
  return !schedule_violation(inst, s).has_value();
}

/// max(ceil(sum p / m), max p).
Time trivial_lower_bound(const Instance& inst);

struct TimeRange {
  Time lo = 1;
  Time hi = 10;
};

/// Named processing-time intervals: a = [1,10], b = [1,50], c = [1,100].
TimeRange named_interval(char name);

/// G(n, d) conflict graph with processing times uniform in `times`.
Instance gen_erdos_renyi(int n, double d, TimeRange times, int m, std::uint64_t seed);

/// B(n, d): A = {0..n/2-1}, B = {n/2..n-1}; each A-B pair is an edge with
/// probability d. Jobs in A take p_a, jobs in B take p_b.
Instance gen_bipartite(int n, double d, int m, Time p_a, Time p_b, std::uint64_t seed);

/// Line-oriented text format:
///   p pmc <n> <m>     first non-comment line
///   w <v> <time>      exactly once per job
///   e <u> <v>         one per conflict, 1 <= u < v <= n
/// Lines starting with '#' or 'c' are comments; "c name <id>" sets the name.
/// Throws ParseError with the offending line number.
Instance parse_instance(std::string_view text, std::string name = {});
std::string write_instance(const Instance& inst);

/// File name without a trailing ".pmc" or ".txt"; other dots are kept, so
/// "rand_25_0.5_a_1" names itself.
std::string instance_name_from_path(const std::filesystem::path& path);
/// The default name is instance_name_from_path(path).
Instance read_instance_file(const std::filesystem::path& path);
void write_instance_file(const std::filesystem::path& path, const Instance& inst);

/// Compact decimal rendering used in generated names ("0.5", "0.25", "1").
std::string format_decimal(double value);

}  // namespace pmc
