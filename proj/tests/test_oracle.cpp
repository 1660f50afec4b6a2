#include <algorithm>
#include <set>

#include "brute.hpp"
#include "doctest.h"
#include "pmc/error.hpp"
#include "pmc/oracle.hpp"
#include "support.hpp"

using namespace pmc;
using pmc::testing::graph_of;

TEST_CASE("brute-force makespan") {
  CHECK(brute_force_makespan(make_instance("a", ConflictGraph::complete(3), {1, 2, 3}, 3)) == 3);
  CHECK_FALSE(brute_force_makespan(make_instance("b", ConflictGraph::complete(3), {1, 2, 3}, 2)));
  CHECK(brute_force_makespan(make_instance("c", graph_of(3, {{0, 1}, {1, 2}}), {1, 1, 1}, 2)) == 2);
  CHECK(brute_force_makespan(make_instance("d", ConflictGraph(4), {5, 1, 1, 1}, 2)) == 5);
  CHECK_THROWS_AS(brute_force_makespan(make_instance("e", ConflictGraph(13), std::vector<Time>(13, 1), 2)),
                  SizeExceeded);
}

TEST_CASE("brute-force makespan agrees with plain enumeration") {
  testing::Gen gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen.integer(1, 7);
    const auto inst = gen.instance(n, gen.real(0.0, 0.8), gen.integer(2, 3), 9);
    // Every assignment in m^n, no symmetry reduction.
    Time best = -1;
    std::vector<int> machine(static_cast<std::size_t>(n), 0);
    while (true) {
      const auto s = make_schedule(inst, machine);
      if (is_valid_schedule(inst, s) && (best < 0 || s.makespan < best)) best = s.makespan;
      int i = 0;
      while (i < n && ++machine[i] == inst.m) machine[i++] = 0;
      if (i == n) break;
    }
    const auto got = brute_force_makespan(inst);
    if (best < 0) {
      CHECK_FALSE(got);
    } else {
      CHECK(got == best);
    }
    CHECK(got.has_value() == (testing::brute_chi(inst.graph) <= inst.m));
  }
}

TEST_CASE("representatives points of small graphs") {
  const auto path = make_instance("p", graph_of(3, {{0, 1}, {1, 2}}), {1, 1, 1}, 2);
  const auto pts = enumerate_rf_points(path, VertexOrdering::identity(3));
  // Columns: x_13 then x_33.
  std::set<std::vector<int>> xs;
  for (const auto& p : pts) xs.insert(p.x);
  CHECK(xs == std::set<std::vector<int>>{{1, 0}, {0, 1}, {1, 1}});
  CHECK(pts.size() == 3);

  const auto k3 = enumerate_rf_points(make_instance("k", ConflictGraph::complete(3), {1, 2, 3}, 3),
                                      VertexOrdering::identity(3));
  REQUIRE(k3.size() == 1);
  CHECK(k3[0].x.empty());
  CHECK(k3[0].y == 3);

  const auto e2 = enumerate_rf_points(make_instance("e", ConflictGraph(2), {2, 3}, 2), VertexOrdering::identity(2));
  std::set<std::pair<std::vector<int>, Time>> got;
  for (const auto& p : e2) got.insert({p.x, p.y});
  // Columns: x_12 then x_22.
  CHECK(got == std::set<std::pair<std::vector<int>, Time>>{{{1, 0}, 5}, {{0, 1}, 3}, {{1, 1}, 5}});
}

TEST_CASE("affine dimension") {
  CHECK(affine_dimension({{0, 0}, {1, 0}, {2, 0}}) == 1);
  CHECK(affine_dimension({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}) == 2);
  CHECK(affine_dimension({{3, 3}}) == 0);
  CHECK_THROWS_AS(affine_dimension({}), ParameterError);

  const auto path = make_instance("p", graph_of(3, {{0, 1}, {1, 2}}), {1, 1, 1}, 2);
  CHECK(rf_polytope_dimension(path, VertexOrdering::identity(3)) == 3);
  CHECK(rf_polytope_dimension(make_instance("k", ConflictGraph::complete(3), {1, 1, 1}, 3),
                              VertexOrdering::identity(3)) == 1);
}

TEST_CASE("relaxed polytope is full-dimensional") {
  testing::Gen gen(67);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(1, 6);
    const auto inst = gen.instance(n, gen.real(0.0, 1.0), 2, 5);
    const auto ord = gen.ordering(n);
    const auto an = anti_neighborhoods(inst.graph, ord);
    const int expect = n + static_cast<int>(an.complement_edges) - static_cast<int>(an.sources.size()) + 1;
    CHECK(rf_polytope_dimension(inst, ord) == expect);
  }
}

TEST_CASE("trivial facets have codimension one") {
  testing::Gen gen(71);
  int faces = 0;
  for (int trial = 0; trial < 8; ++trial) {
    const int n = gen.integer(3, 5);
    const auto inst = gen.instance(n, gen.real(0.2, 0.6), 2, 4);
    const auto ord = gen.ordering(n);
    const auto model = build_rf(inst, ord);
    const int full = rf_polytope_dimension(inst, ord);
    for (int v = 0; v < n; ++v) {
      const int g = model.gamma(v);
      if (g < 0) continue;
      CHECK(rf_polytope_dimension(inst, ord, [&](const RfPoint& p) { return p.x[g] == 1; }) ==
            full - 1);
      ++faces;
    }
  }
  CHECK(faces > 0);
}

TEST_CASE("odd-cycle enumeration") {
  const std::vector<double> x5(5, 0.45);
  const auto c5 = most_violated_odd_cycle(testing::cycle(5), x5, 1.0);
  REQUIRE(c5);
  CHECK(c5->violation == doctest::Approx(0.25));
  CHECK(c5->vertices.size() == 5);
  CHECK_FALSE(most_violated_odd_cycle(testing::cycle(6), std::vector<double>(6, 0.5), 1.0));

  // C5 plus chord {0,2}: triangle 0-1-2 against the 5-cycle.
  const auto chord = graph_of(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 2}});
  const auto tri = most_violated_odd_cycle(chord, std::vector<double>{0.5, 0.5, 0.5, 0.1, 0.1}, 1.0);
  REQUIRE(tri);
  CHECK(tri->vertices == std::vector<Vertex>{0, 1, 2});
  CHECK(tri->violation == doctest::Approx(0.5));
  const auto big = most_violated_odd_cycle(chord, std::vector<double>{0.4, 0.4, 0.4, 0.55, 0.55}, 1.0);
  REQUIRE(big);
  CHECK(big->vertices.size() == 5);
  CHECK(big->violation == doctest::Approx(0.3));
  CHECK_THROWS_AS(most_violated_odd_cycle(ConflictGraph(10), std::vector<double>(10, 0.0), 1.0), SizeExceeded);
}

TEST_CASE("model enumeration honours symmetry rows") {
  const auto inst = make_instance("s", ConflictGraph(3), {1, 2, 3}, 2);
  int plain = 0, label = 0;
  enumerate_model_points(build_af(inst), [&](const std::vector<double>&) { return ++plain, true; });
  enumerate_model_points(add_symmetry_breaking(build_af(inst), Symmetry::Label),
                         [&](const std::vector<double>&) { return ++label, true; });
  CHECK(plain == 27);  // each job on a nonempty machine subset
  CHECK(label < plain);
  CHECK(label > 0);
  int seen = 0;
  enumerate_model_points(build_af(inst), [&](const std::vector<double>&) { return ++seen < 5; });
  CHECK(seen == 5);
}
