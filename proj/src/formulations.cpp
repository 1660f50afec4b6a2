#include "pmc/formulations.hpp"

#include <algorithm>
#include <cmath>

#include "pmc/error.hpp"

namespace pmc {

const char* to_string(Formulation f) { return f == Formulation::AF ? "af" : "rf"; }

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::LoadOrder: return "load-order";
    case Symmetry::Label: return "label";
    case Symmetry::LabelStrengthened: return "label-strengthened";
  }
  return "?";
}

std::string to_string(const VarKey& key) {
  if (key.kind == VarKey::Kind::Makespan) return "y";
  return "x[" + std::to_string(key.a + 1) + "," + std::to_string(key.b + 1) + "]";
}

int MilpModel::add_variable(VarKey key, double lo, double hi, double cost, bool is_integer) {
  const int j = lp.add_variable(lo, hi, cost);
  keys.push_back(key);
  integer.push_back(is_integer ? 1 : 0);
  return j;
}

int MilpModel::add_row(Row row, RowClass cls) {
  row_class.push_back(cls);
  return lp.add_row(std::move(row));
}

MilpModel build_af(const Instance& inst) {
  const int n = inst.jobs();
  const int m = inst.m;
  MilpModel model;
  model.kind = Formulation::AF;
  model.instance = inst;
  model.lookup_.assign(static_cast<std::size_t>(n) * m, -1);
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < m; ++k)
      model.lookup_[static_cast<std::size_t>(v) * m + k] =
          model.add_variable({VarKey::Kind::Assign, v, k}, 0.0, 1.0, 0.0, true);
  model.makespan = model.add_variable({}, 0.0, kInf, 1.0, false);

  for (int v = 0; v < n; ++v) {
    Row r{{}, {}, Sense::Ge, 1.0};
    for (int k = 0; k < m; ++k) {
      r.index.push_back(model.var(v, k));
      r.coef.push_back(1.0);
    }
    model.add_row(std::move(r), RowClass::Assign);
  }
  for (auto [u, v] : inst.graph.edges())
    for (int k = 0; k < m; ++k)
      model.add_row(Row{{model.var(u, k), model.var(v, k)}, {1.0, 1.0}, Sense::Le, 1.0}, RowClass::Conflict);
  for (int k = 0; k < m; ++k) {
    Row r{{}, {}, Sense::Le, 0.0};
    for (int v = 0; v < n; ++v) {
      r.index.push_back(model.var(v, k));
      r.coef.push_back(static_cast<double>(inst.p[v]));
    }
    r.index.push_back(model.makespan);
    r.coef.push_back(-1.0);
    model.add_row(std::move(r), RowClass::Load);
  }
  return model;
}

MilpModel add_symmetry_breaking(MilpModel model, Symmetry variant) {
  if (model.kind != Formulation::AF) throw WrongKind("symmetry breaking applies to the assignment model only");
  const int n = model.instance.jobs();
  const int m = model.instance.m;
  const auto& p = model.instance.p;
  switch (variant) {
    case Symmetry::None: break;
    case Symmetry::LoadOrder:
      for (int k = 0; k + 1 < m; ++k) {
        Row r{{}, {}, Sense::Ge, 0.0};
        for (int v = 0; v < n; ++v) {
          r.index.push_back(model.var(v, k));
          r.coef.push_back(static_cast<double>(p[v]));
        }
        for (int v = 0; v < n; ++v) {
          r.index.push_back(model.var(v, k + 1));
          r.coef.push_back(-static_cast<double>(p[v]));
        }
        model.add_row(std::move(r), RowClass::SymLoad);
      }
      break;
    case Symmetry::Label:
    case Symmetry::LabelStrengthened: {
      // In 1-based labels: job v may only use machines k <= v, and machine k
      // is usable only if some job u in [k-1, v-1] sits on machine k-1.
      for (int v = 0; v + 1 < m && v < n; ++v)
        for (int k = v + 1; k < m; ++k) model.lp.set_bounds(model.var(v, k), 0.0, 0.0);
      for (int v = 1; v < n; ++v) {
        for (int k = 1; k <= std::min(v, m - 1); ++k) {
          Row r{{}, {}, Sense::Le, 0.0};
          const int top = variant == Symmetry::Label ? k : std::min(v, m - 1);
          for (int i = k; i <= top; ++i) {
            r.index.push_back(model.var(v, i));
            r.coef.push_back(1.0);
          }
          for (int u = k - 1; u <= v - 1; ++u) {
            r.index.push_back(model.var(u, k - 1));
            r.coef.push_back(-1.0);
          }
          model.add_row(std::move(r), RowClass::SymLabel);
        }
      }
      break;
    }
  }
  return model;
}

MilpModel build_rf(const Instance& inst, const VertexOrdering& ord) {
  const int n = inst.jobs();
  MilpModel model;
  model.kind = Formulation::RF;
  model.instance = inst;
  model.ordering = ord;
  model.anti = anti_neighborhoods(inst.graph, ord);
  const auto& an = model.anti;
  model.lookup_.assign(static_cast<std::size_t>(n) * n, -1);

  for (Vertex u : ord.order()) {
    if (!an.is_source[u]) {
      model.lookup_[static_cast<std::size_t>(u) * n + u] =
          model.add_variable({VarKey::Kind::Represent, u, u}, 0.0, 1.0, 0.0, true);
    }
    for (Vertex w : an.after[u]) {
      model.lookup_[static_cast<std::size_t>(u) * n + w] =
          model.add_variable({VarKey::Kind::Represent, u, w}, 0.0, 1.0, 0.0, true);
    }
  }
  model.makespan = model.add_variable({}, 0.0, kInf, 1.0, false);

  {
    Row r{{}, {}, Sense::Le, static_cast<double>(inst.m) - static_cast<double>(an.sources.size())};
    for (Vertex v : ord.order()) {
      if (an.is_source[v]) continue;
      r.index.push_back(model.gamma(v));
      r.coef.push_back(1.0);
    }
    model.add_row(std::move(r), RowClass::Machines);
  }
  for (Vertex v : ord.order()) {
    if (an.is_source[v]) continue;
    Row r{{model.gamma(v)}, {1.0}, Sense::Ge, 1.0};
    for (Vertex u : an.before[v]) {
      r.index.push_back(model.var(u, v));
      r.coef.push_back(1.0);
    }
    model.add_row(std::move(r), RowClass::Cover);
  }
  for (Vertex v : ord.order()) {
    const auto& after = an.after[v];
    const bool source = an.is_source[v];
    auto emit = [&](std::vector<Vertex> clique) {
      Row r{{}, {}, Sense::Le, source ? 1.0 : 0.0};
      for (Vertex u : clique) {
        r.index.push_back(model.var(v, u));
        r.coef.push_back(1.0);
      }
      if (!source) {
        r.index.push_back(model.gamma(v));
        r.coef.push_back(-1.0);
      }
      model.add_row(std::move(r), RowClass::Clique);
    };
    for (std::size_t i = 0; i < after.size(); ++i) {
      bool isolated = true;
      for (std::size_t j = 0; j < after.size(); ++j) {
        if (i == j || !inst.graph.adjacent(after[i], after[j])) continue;
        isolated = false;
        if (i < j) emit({after[i], after[j]});
      }
      if (isolated) emit({after[i]});
    }
  }
  for (Vertex v : ord.order()) {
    const bool source = an.is_source[v];
    Row r{{}, {}, Sense::Le, source ? -static_cast<double>(inst.p[v]) : 0.0};
    if (!source) {
      r.index.push_back(model.gamma(v));
      r.coef.push_back(static_cast<double>(inst.p[v]));
    }
    for (Vertex u : an.after[v]) {
      r.index.push_back(model.var(v, u));
      r.coef.push_back(static_cast<double>(inst.p[u]));
    }
    r.index.push_back(model.makespan);
    r.coef.push_back(-1.0);
    model.add_row(std::move(r), RowClass::Load);
  }
  return model;
}

double lp_root_bound(const MilpModel& model) {
  const auto sol = solve_lp(model.lp);
  if (sol.status == LpStatus::Infeasible) return kInf;
  if (sol.status != LpStatus::Optimal) throw SolverFailure("relaxation is unbounded");
  return sol.objective;
}

namespace {

bool is_one(double v) { return std::abs(v - 1.0) <= kIntegralityTol; }

}  // namespace

Schedule extract_schedule(const MilpModel& model, const FractionalPoint& point) {
  const auto& x = point.values;
  if (static_cast<int>(x.size()) != model.lp.variables()) throw ExtractionError("point has wrong dimension");
  for (int j = 0; j < model.lp.variables(); ++j) {
    if (!model.integer[j]) continue;
    if (std::abs(x[j] - std::round(x[j])) > kIntegralityTol) {
      throw ExtractionError("variable " + to_string(model.keys[j]) + " is fractional");
    }
  }
  if (model.lp.max_violation(x) > kIntegralityTol) throw ExtractionError("point violates the model");

  const Instance& inst = model.instance;
  const int n = inst.jobs();
  std::vector<int> machine(static_cast<std::size_t>(n), -1);
  if (model.kind == Formulation::AF) {
    for (int v = 0; v < n; ++v) {
      for (int k = 0; k < inst.m && machine[v] < 0; ++k)
        if (is_one(x[model.var(v, k)])) machine[v] = k;
      if (machine[v] < 0) throw ExtractionError("job " + std::to_string(v + 1) + " unassigned");
    }
  } else {
    const auto& an = model.anti;
    std::vector<int> opened(static_cast<std::size_t>(n), -1);
    int machines = 0;
    for (Vertex u : model.ordering.order()) {
      if (an.is_source[u] || is_one(x[model.gamma(u)])) opened[u] = machines++;
    }
    if (machines > inst.m) throw ExtractionError("more representatives than machines");
    for (Vertex v : model.ordering.order()) {
      if (opened[v] >= 0) {
        machine[v] = opened[v];
        continue;
      }
      for (Vertex u : an.before[v]) {
        if (!is_one(x[model.var(u, v)])) continue;
        if (opened[u] < 0) throw ExtractionError("job represented by a non-representative");
        machine[v] = opened[u];
        break;
      }
      if (machine[v] < 0) throw ExtractionError("job " + std::to_string(v + 1) + " unrepresented");
    }
  }
  Schedule s = make_schedule(inst, std::move(machine));
  if (auto why = schedule_violation(inst, s)) throw ExtractionError(*why);
  return s;
}

}  // namespace pmc
