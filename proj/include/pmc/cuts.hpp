#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmc/formulations.hpp"

namespace pmc {

enum class CutClass { Clique, OddCycle, External, AfExternal, Internal };
const char* to_string(CutClass c);

struct CutRow {
  Row row;
  CutClass cls = CutClass::Clique;
  double violation = 0.0;  ///< lhs - rhs at the separated point (rhs - lhs for >=)
  int owner = -1;          ///< RF: representative v. AF: machine k. Internal: -1.
  std::vector<Vertex> support;
  bool exact = true;       ///< false when a greedy clique fallback produced it
};

inline constexpr double kCutTolerance = 1e-4;

/// Odd-cycle inequalities sum_{u in U} x_vu <= (|U|-1)/2 gamma_v over odd
/// cycles of G[N+(v)], found as shortest u+ -> u- paths in the bipartite
/// double cover. Every cycle lighter than gamma_v/2 - tol is returned, most
/// violated first, at most max_cuts. Throws InvalidPoint when some edge
/// weight is below -1e-9 (the point violates a clique row of the model).
std::vector<CutRow> separate_odd_cycle_rf(const MilpModel& model, const FractionalPoint& point,
                                          int max_cuts = 50, double tol = kCutTolerance);

/// Clique inequalities sum_{u in K} x_vu <= gamma_v with K a maximum-weight
/// clique of G[N+(v)] extended to an inclusion-maximal one.
std::vector<CutRow> separate_clique_rf(const MilpModel& model, const FractionalPoint& point,
                                       int max_cuts = 50, double tol = kCutTolerance);

/// Per machine k, sum_{u in K} x_uk <= 1 over a maximum-weight clique K of G.
std::vector<CutRow> separate_clique_af(const MilpModel& model, const FractionalPoint& point,
                                       int max_cuts = 50, double tol = kCutTolerance);

/// Rewrites a triangle odd-cycle cut as a clique cut on an inclusion-maximal
/// clique of G[N+(v)] containing it, preferring heavy vertices at `point`.
CutRow lift_triangle(const MilpModel& model, const CutRow& triangle, const FractionalPoint& point);

/// sum_{u in U} x_vu / alpha_u <= gamma_v, alpha_u the largest stable set of
/// G[U] through u. Requires U within N+(v) and |U| <= 20.
CutRow external_inequality(const MilpModel& model, Vertex v, std::span<const Vertex> u_set);

/// AF counterpart on machine k: sum_{u in U} x_uk / alpha_u <= 1.
CutRow af_external_inequality(const MilpModel& model, int k, std::span<const Vertex> u_set);

/// sum over v in U \ S_U of sum over u in (N-(v) \ U) + {v} of x_uv
///   >= chi(G[U]) - |S_U|, with S_U the members of U without an
/// anti-predecessor in U. Requires |U| <= 20.
CutRow internal_inequality(const MilpModel& model, std::span<const Vertex> u_set);

/// Fills in cut.violation at `point`.
void evaluate_cut(CutRow& cut, const FractionalPoint& point);

struct CutVerdict {
  bool valid = true;
  std::vector<double> point;  ///< model columns of a violating integer point
  double violation = 0.0;
};

/// Exhaustive check over every integer point of the model's feasible set
/// (the RF machine-count row is dropped, so validity is checked on the
/// larger relaxed polytope). Requires n <= 10.
CutVerdict check_cut_validity(const MilpModel& model, const Row& cut);

}  // namespace pmc
