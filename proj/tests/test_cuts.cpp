#include <algorithm>
#include <cmath>

#include "brute.hpp"
#include "doctest.h"
#include "pmc/cuts.hpp"
#include "pmc/error.hpp"
#include "pmc/oracle.hpp"
#include "support.hpp"

using namespace pmc;
using pmc::testing::embed_below;
using pmc::testing::graph_of;

namespace {

FractionalPoint star_point(const MilpModel& model, Vertex v, const std::vector<Vertex>& members,
                           const std::vector<double>& x, double gamma) {
  FractionalPoint pt;
  pt.values.assign(static_cast<std::size_t>(model.lp.variables()), 0.0);
  for (std::size_t i = 0; i < members.size(); ++i) pt.values[model.var(v, members[i])] = x[i];
  if (model.gamma(v) >= 0) pt.values[model.gamma(v)] = gamma;
  return pt;
}

std::vector<CutRow> owned_by(std::vector<CutRow> cuts, int owner) {
  std::erase_if(cuts, [&](const CutRow& c) { return c.owner != owner; });
  return cuts;
}

FractionalPoint lp_point(const MilpModel& model) {
  const auto sol = solve_lp(model.lp);
  return {sol.x, sol.objective};
}

}  // namespace

TEST_CASE("odd-cycle separation on C5") {
  const auto e = embed_below(testing::cycle(5), true);
  const auto model = build_rf(e.inst, e.ord);
  const auto cuts = owned_by(
      separate_odd_cycle_rf(model, star_point(model, e.v, e.map, std::vector<double>(5, 0.45), 1.0)), e.v);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].violation == doctest::Approx(0.25));
  CHECK(cuts[0].row.rhs == doctest::Approx(2.0));
  CHECK(cuts[0].support == e.map);

  CHECK(owned_by(separate_odd_cycle_rf(model, star_point(model, e.v, e.map, std::vector<double>(5, 0.3), 1.0)),
                 e.v)
            .empty());

  const auto b = embed_below(testing::cycle(6), false);
  const auto bm = build_rf(b.inst, b.ord);
  CHECK(owned_by(separate_odd_cycle_rf(bm, star_point(bm, b.v, b.map, std::vector<double>(6, 0.5), 1.0)), b.v)
            .empty());
}

TEST_CASE("odd-cycle rhs coefficient uses gamma") {
  const auto e = embed_below(testing::cycle(5), false);
  const auto model = build_rf(e.inst, e.ord);
  const auto cuts = owned_by(
      separate_odd_cycle_rf(model, star_point(model, e.v, e.map, std::vector<double>(5, 0.4), 0.8)), e.v);
  REQUIRE(cuts.size() == 1);
  const Row& r = cuts[0].row;
  CHECK(r.rhs == 0.0);
  CHECK(r.index.back() == model.gamma(e.v));
  CHECK(r.coef.back() == doctest::Approx(-2.0));
  CHECK(cuts[0].violation == doctest::Approx(0.4));
}

TEST_CASE("odd-cycle separation rejects points off the edge rows") {
  const auto e = embed_below(testing::cycle(5), true);
  const auto model = build_rf(e.inst, e.ord);
  CHECK_THROWS_AS(separate_odd_cycle_rf(model, star_point(model, e.v, e.map, std::vector<double>(5, 0.6), 1.0)),
                  InvalidPoint);
  CHECK_THROWS_AS(separate_odd_cycle_rf(build_af(e.inst), FractionalPoint{}), WrongKind);
}

TEST_CASE("odd-cycle separation agrees with cycle enumeration") {
  testing::Gen gen(101);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int k = gen.integer(3, 9);
    const auto h = gen.graph(k, gen.real(0.2, 0.8));
    const bool source = gen.coin();
    const auto e = embed_below(h, source);
    const auto model = build_rf(e.inst, e.ord);
    const double gamma = source ? 1.0 : gen.real(0.2, 1.0);
    std::vector<double> x(static_cast<std::size_t>(k));
    for (auto& xi : x) xi = gamma * gen.real(0.2, 0.5);
    const auto cuts = owned_by(separate_odd_cycle_rf(model, star_point(model, e.v, e.map, x, gamma), 1000), e.v);
    const auto best = most_violated_odd_cycle(h, x, gamma);
    const bool expect = best && best->violation > kCutTolerance;
    CHECK(expect == !cuts.empty());
    if (expect && !cuts.empty()) {
      ++found;
      CHECK(std::abs(cuts[0].violation - best->violation) <= 1e-9);
    }
    for (const auto& c : cuts) {
      CHECK(c.support.size() % 2 == 1);
      CHECK(c.support.size() >= 3);
    }
  }
  CHECK(found > 20);
}

TEST_CASE("clique separation on a triangle") {
  const auto e = embed_below(ConflictGraph::complete(3), true);
  const auto model = build_rf(e.inst, e.ord);
  const auto cuts = owned_by(separate_clique_rf(model, star_point(model, e.v, e.map, {0.5, 0.5, 0.5}, 1.0)), e.v);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].violation == doctest::Approx(0.5));
  CHECK(cuts[0].exact);

  const auto empty = embed_below(ConflictGraph(3), true);
  const auto em = build_rf(empty.inst, empty.ord);
  CHECK(separate_clique_rf(em, star_point(em, empty.v, empty.map, {1.0, 1.0, 0.5}, 1.0)).empty());

  const auto af = build_af(make_instance("k3", ConflictGraph::complete(3), {1, 1, 1}, 2));
  FractionalPoint pt;
  pt.values.assign(static_cast<std::size_t>(af.lp.variables()), 0.5);
  const auto afc = separate_clique_af(af, pt);
  REQUIRE(afc.size() == 2);
  CHECK(afc[0].violation == doctest::Approx(0.5));
  CHECK(separate_clique_af(af, pt, 1).size() == 1);
}

TEST_CASE("clique separation weight matches enumeration") {
  testing::Gen gen(103);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = gen.integer(1, 14);
    const auto h = gen.graph(k, gen.real(0.2, 0.9));
    const auto e = embed_below(h, true);
    const auto model = build_rf(e.inst, e.ord);
    std::vector<double> x(static_cast<std::size_t>(k));
    for (auto& xi : x) xi = gen.real(0.0, 0.7);
    const auto cuts = owned_by(separate_clique_rf(model, star_point(model, e.v, e.map, x, 1.0)), e.v);
    const double brute = testing::brute_max_weight_clique(h, x);
    CHECK((brute > 1.0 + kCutTolerance) == !cuts.empty());
    if (!cuts.empty()) {
      CHECK(cuts[0].violation >= brute - 1.0 - 1e-9);
      CHECK(testing::is_clique(e.inst.graph, cuts[0].support));
    }
  }
}

TEST_CASE("triangles lift to maximal cliques") {
  // Triangle {a,b,c} inside K4 below a source.
  const auto e = embed_below(ConflictGraph::complete(4), true);
  const auto model = build_rf(e.inst, e.ord);
  const auto pt = star_point(model, e.v, e.map, {0.5, 0.5, 0.5, 0.1}, 1.0);
  CutRow tri;
  tri.owner = e.v;
  tri.support = {e.map[0], e.map[1], e.map[2]};
  const auto lifted = lift_triangle(model, tri, pt);
  CHECK(lifted.cls == CutClass::Clique);
  CHECK(lifted.support == e.map);
  CHECK(lifted.violation == doctest::Approx(0.6));
}

TEST_CASE("external inequality coefficients") {
  const auto e = embed_below(testing::cycle(5), false);
  const auto model = build_rf(e.inst, e.ord);
  const auto c5 = external_inequality(model, e.v, e.map);
  for (std::size_t i = 0; i < 5; ++i) CHECK(c5.row.coef[i] == doctest::Approx(0.5));
  CHECK(c5.row.coef.back() == -1.0);

  const auto free4 = embed_below(ConflictGraph(4), true);
  const auto fm = build_rf(free4.inst, free4.ord);
  const auto c4 = external_inequality(fm, free4.v, free4.map);
  CHECK(c4.row.rhs == 1.0);
  for (double c : c4.row.coef) CHECK(c == doctest::Approx(0.25));

  const auto k4 = embed_below(ConflictGraph::complete(4), true);
  const auto km = build_rf(k4.inst, k4.ord);
  for (double c : external_inequality(km, k4.v, k4.map).row.coef) CHECK(c == 1.0);

  const std::vector<Vertex> outside{e.v};
  CHECK_THROWS_AS(external_inequality(model, e.v, outside), ParameterError);
  const auto big = embed_below(ConflictGraph(21), true);
  CHECK_THROWS_AS(external_inequality(build_rf(big.inst, big.ord), big.v, big.map), SizeExceeded);

  const auto af = build_af(make_instance("c5", testing::cycle(5), std::vector<Time>(5, 1), 3));
  const std::vector<Vertex> all{0, 1, 2, 3, 4};
  const auto afe = af_external_inequality(af, 1, all);
  CHECK(afe.row.index[0] == af.var(0, 1));
  CHECK(afe.row.coef[0] == doctest::Approx(0.5));
  CHECK(check_cut_validity(af, afe.row).valid);
}

TEST_CASE("internal inequality") {
  // A single non-source vertex gives the degenerate rhs 0 row.
  const auto path = make_instance("p", graph_of(3, {{0, 1}, {1, 2}}), {1, 1, 1}, 2);
  const auto pm = build_rf(path, VertexOrdering::identity(3));
  const std::vector<Vertex> single{2};
  const auto deg = internal_inequality(pm, single);
  CHECK(deg.row.rhs == 0.0);
  CHECK(deg.row.index.empty());

  // U = {1, 3}: vertex 3 has anti-predecessor 1 inside U.
  const std::vector<Vertex> pair{0, 2};
  const auto both = internal_inequality(pm, pair);
  CHECK(both.row.rhs == 0.0);
  CHECK(both.row.sense == Sense::Ge);
  CHECK(both.row.index == std::vector<int>{pm.gamma(2)});

  // Embedded web W(9,4) after one extra vertex: chi = 3.
  const auto web = make_web({9, 4}, false);
  std::vector<Edge> edges;
  for (auto [a, b] : web.graph.edges()) edges.emplace_back(a + 1, b + 1);
  edges.emplace_back(0, 1);
  const auto inst = make_instance("w", ConflictGraph(10, edges), std::vector<Time>(10, 1), 3);
  const auto model = build_rf(inst, VertexOrdering::identity(10));
  std::vector<Vertex> u_set;
  for (int i = 1; i <= 9; ++i) u_set.push_back(i);
  const auto cut = internal_inequality(model, u_set);
  int minimal = 0;
  for (Vertex v : u_set) {
    const auto& before = model.anti.before[v];
    minimal += std::none_of(before.begin(), before.end(), [](Vertex u) { return u >= 1; }) ? 1 : 0;
  }
  CHECK(cut.row.rhs == 3 - minimal);
  CHECK(check_cut_validity(model, cut.row).valid);
}

TEST_CASE("validity check finds a violating point") {
  const auto inst = make_instance("e", ConflictGraph(3), {1, 1, 1}, 2);
  const auto model = build_rf(inst, VertexOrdering::identity(3));
  // x_12 <= 0 fails on the point that puts job 2 with job 1.
  Row bad{{model.var(0, 1)}, {1.0}, Sense::Le, 0.0};
  const auto verdict = check_cut_validity(model, bad);
  CHECK_FALSE(verdict.valid);
  CHECK(verdict.point[model.var(0, 1)] == 1.0);
  CHECK(verdict.violation == doctest::Approx(1.0));

  Row ok{{model.var(0, 1), model.var(0, 2)}, {1.0, 1.0}, Sense::Le, 2.0};
  CHECK(check_cut_validity(model, ok).valid);
  const auto big = make_instance("b", ConflictGraph(11), std::vector<Time>(11, 1), 2);
  CHECK_THROWS_AS(check_cut_validity(build_af(big), ok), SizeExceeded);
}

TEST_CASE("separated cuts are valid") {
  testing::Gen gen(107);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen.integer(3, 8);
    const auto inst = gen.instance(n, gen.real(0.2, 0.7), gen.integer(2, 3), 10);
    const auto rf = build_rf(inst, gen.ordering(n));
    if (solve_lp(rf.lp).status != LpStatus::Optimal) continue;
    const auto pt = lp_point(rf);
    std::vector<double> noisy = pt.values;
    for (auto& v : noisy) v = std::min(1.0, v * gen.real(0.8, 1.6));
    for (const std::vector<double>* point : {&pt.values, static_cast<const std::vector<double>*>(&noisy)}) {
      FractionalPoint fp{*point, 0.0};
      auto cuts = separate_clique_rf(rf, fp);
      try {
        auto odd = separate_odd_cycle_rf(rf, fp);
        cuts.insert(cuts.end(), odd.begin(), odd.end());
      } catch (const InvalidPoint&) {
        CHECK(point == &noisy);
      }
      for (const auto& c : cuts) {
        CHECK(c.violation > kCutTolerance);
        CHECK(check_cut_validity(rf, c.row).valid);
        ++checked;
      }
    }
    const auto af = build_af(inst);
    auto afp = lp_point(af);
    for (auto& v : afp.values) v = std::min(1.0, v * gen.real(1.0, 2.5));
    for (const auto& c : separate_clique_af(af, afp)) {
      CHECK(check_cut_validity(af, c.row).valid);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("cuts only tighten the relaxation") {
  testing::Gen gen(109);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.integer(4, 9);
    const auto inst = gen.instance(n, gen.real(0.3, 0.8), 3, 10);
    auto model = build_rf(inst, VertexOrdering::identity(n));
    const auto sol = solve_lp(model.lp);
    if (sol.status != LpStatus::Optimal) continue;
    const auto cuts = separate_clique_rf(model, {sol.x, sol.objective});
    for (const auto& c : cuts) model.add_row(c.row, RowClass::Cut);
    CHECK(lp_root_bound(model) >= sol.objective - 1e-7);
    for (const auto& c : cuts) CHECK(c.row.violation(sol.x) > kCutTolerance);
  }
}
