#include "pmc/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "pmc/error.hpp"

namespace pmc {

Time Instance::total_time() const noexcept { return std::accumulate(p.begin(), p.end(), Time{0}); }

Time Instance::max_time() const noexcept {
  return p.empty() ? 0 : *std::max_element(p.begin(), p.end());
}

Instance make_instance(std::string name, ConflictGraph graph, std::vector<Time> p, int m) {
  if (static_cast<int>(p.size()) != graph.order()) {
    throw ParameterError("expected " + std::to_string(graph.order()) + " processing times, got " +
                         std::to_string(p.size()));
  }
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (p[v] < 1) throw ParameterError("processing time of job " + std::to_string(v + 1) + " < 1");
  }
  if (m < 2) throw ParameterError("machine count must be at least 2");
  return Instance{std::move(name), std::move(graph), std::move(p), m};
}

std::vector<Time> machine_loads(const Instance& inst, const std::vector<int>& machine) {
  std::vector<Time> load(static_cast<std::size_t>(inst.m), 0);
  for (std::size_t v = 0; v < machine.size(); ++v) {
    if (machine[v] >= 0 && machine[v] < inst.m) load[machine[v]] += inst.p[v];
  }
  return load;
}

Schedule make_schedule(const Instance& inst, std::vector<int> machine) {
  const auto load = machine_loads(inst, machine);
  Schedule s;
  s.machine = std::move(machine);
  s.makespan = load.empty() ? 0 : *std::max_element(load.begin(), load.end());
  return s;
}

std::optional<std::string> schedule_violation(const Instance& inst, const Schedule& s) {
  if (static_cast<int>(s.machine.size()) != inst.jobs()) return "assignment size mismatch";
  for (int v = 0; v < inst.jobs(); ++v) {
    if (s.machine[v] < 0 || s.machine[v] >= inst.m) {
      return "job " + std::to_string(v + 1) + " on machine out of range";
    }
  }
  for (auto [u, v] : inst.graph.edges()) {
    if (s.machine[u] == s.machine[v]) {
      return "conflicting jobs " + std::to_string(u + 1) + " and " + std::to_string(v + 1) +
             " share machine " + std::to_string(s.machine[u] + 1);
    }
  }
  const auto load = machine_loads(inst, s.machine);
  const Time makespan = *std::max_element(load.begin(), load.end());
  if (makespan != s.makespan) {
    return "stored makespan " + std::to_string(s.makespan) + " differs from recomputed " +
           std::to_string(makespan);
  }
  return std::nullopt;
}

Time trivial_lower_bound(const Instance& inst) {
  const Time total = inst.total_time();
  const Time average = (total + inst.m - 1) / inst.m;
  return std::max(average, inst.max_time());
}

TimeRange named_interval(char name) {
  switch (name) {
    case 'a': return {1, 10};
    case 'b': return {1, 50};
    case 'c': return {1, 100};
    default: throw ParameterError(std::string("unknown processing-time interval '") + name + "'");
  }
}

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Portable across standard libraries, unlike std::uniform_int_distribution.
Time uniform_time(std::mt19937_64& rng, TimeRange r) {
  const auto span = static_cast<std::uint64_t>(r.hi - r.lo) + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return r.lo + static_cast<Time>(draw % span);
}

void check_probability(double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw ParameterError("density must lie in [0,1], got " + format_decimal(d));
}

}  // namespace

Instance gen_erdos_renyi(int n, double d, TimeRange times, int m, std::uint64_t seed) {
  check_probability(d);
  if (n < 1) throw ParameterError("need at least one job");
  if (times.lo < 1 || times.hi < times.lo) throw ParameterError("invalid processing-time interval");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (uniform01(rng) < d) edges.emplace_back(u, v);
  std::vector<Time> p(static_cast<std::size_t>(n));
  for (auto& t : p) t = uniform_time(rng, times);
  std::string name = "gnp_" + std::to_string(n) + "_" + format_decimal(d) + "_" + std::to_string(seed);
  return make_instance(std::move(name), ConflictGraph(n, edges), std::move(p), m);
}

Instance gen_bipartite(int n, double d, int m, Time p_a, Time p_b, std::uint64_t seed) {
  check_probability(d);
  if (n < 2 || n % 2 != 0) throw ParameterError("bipartite instances need an even n >= 2");
  const int half = n / 2;
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex a = 0; a < half; ++a)
    for (Vertex b = half; b < n; ++b)
      if (uniform01(rng) < d) edges.emplace_back(a, b);
  std::vector<Time> p(static_cast<std::size_t>(n), p_a);
  std::fill(p.begin() + half, p.end(), p_b);
  std::string name = "bip_" + std::to_string(n) + "_" + format_decimal(d) + "_" + std::to_string(seed);
  return make_instance(std::move(name), ConflictGraph(n, edges), std::move(p), m);
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_integer(std::string_view token, int line) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Instance parse_instance(std::string_view text, std::string name) {
  int n = -1;
  int m = 0;
  std::vector<Time> p;
  std::vector<Edge> edges;
  std::vector<std::vector<char>> seen_edge;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto tok = split_tokens(line);
    if (tok.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    if (tok[0][0] == '#') continue;
    if (tok[0] == "c") {
      if (tok.size() >= 3 && tok[1] == "name" && name.empty()) name = std::string(tok[2]);
      continue;
    }
    if (tok[0] == "p") {
      if (n >= 0) throw ParseError(line_no, "duplicate problem line");
      if (tok.size() != 4 || tok[1] != "pmc") throw ParseError(line_no, "malformed header, expected 'p pmc <n> <m>'");
      const long long nn = parse_integer(tok[2], line_no);
      const long long mm = parse_integer(tok[3], line_no);
      if (nn < 1) throw ParseError(line_no, "job count must be positive");
      if (mm < 2) throw ParseError(line_no, "machine count must be at least 2");
      n = static_cast<int>(nn);
      m = static_cast<int>(mm);
      p.assign(static_cast<std::size_t>(n), 0);
      seen_edge.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
      continue;
    }
    if (n < 0) throw ParseError(line_no, "malformed header: 'p pmc <n> <m>' must come first");
    if (tok[0] == "w") {
      if (tok.size() != 3) throw ParseError(line_no, "expected 'w <v> <time>'");
      const long long v = parse_integer(tok[1], line_no);
      const long long t = parse_integer(tok[2], line_no);
      if (v < 1 || v > n) throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range");
      if (t < 1) throw ParseError(line_no, "processing time must be at least 1");
      if (p[v - 1] != 0) throw ParseError(line_no, "duplicate weight for vertex " + std::to_string(v));
      p[v - 1] = t;
    } else if (tok[0] == "e") {
      if (tok.size() != 3) throw ParseError(line_no, "expected 'e <u> <v>'");
      const long long u = parse_integer(tok[1], line_no);
      const long long v = parse_integer(tok[2], line_no);
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(line_no, "vertex out of range");
      if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u));
      if (u > v) throw ParseError(line_no, "edge endpoints must satisfy u < v");
      if (seen_edge[u - 1][v - 1]) {
        throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      }
      seen_edge[u - 1][v - 1] = 1;
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
    if (eol == text.size()) break;
  }
  if (n < 0) throw ParseError(line_no, "missing 'p pmc <n> <m>' header");
  for (int v = 0; v < n; ++v) {
    if (p[v] == 0) throw ParseError(line_no, "missing weight line for vertex " + std::to_string(v + 1));
  }
  return make_instance(std::move(name), ConflictGraph(n, edges), std::move(p), m);
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  if (!inst.name.empty()) out << "c name " << inst.name << '\n';
  out << "p pmc " << inst.jobs() << ' ' << inst.m << '\n';
  for (int v = 0; v < inst.jobs(); ++v) out << "w " << v + 1 << ' ' << inst.p[v] << '\n';
  for (auto [u, v] : inst.graph.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

std::string instance_name_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension();
  return (ext == ".pmc" || ext == ".txt" ? path.stem() : path.filename()).string();
}

Instance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), instance_name_from_path(path));
}

void write_instance_file(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << write_instance(inst);
}

std::string format_decimal(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

}  // namespace pmc
