#include <sstream>

#include "doctest.h"
#include "pmc/error.hpp"
#include "pmc/lp.hpp"
#include "support.hpp"

using namespace pmc;

namespace {

Row row(std::vector<int> idx, std::vector<double> coef, Sense s, double rhs) {
  return Row{std::move(idx), std::move(coef), s, rhs};
}

LinearProgram random_lp(testing::Gen& g) {
  LinearProgram lp;
  const int n = g.integer(1, 7);
  for (int j = 0; j < n; ++j) {
    const int kind = g.integer(0, 3);
    const double lo = g.integer(-3, 2);
    if (kind == 0) lp.add_variable(lo, lo + g.integer(0, 4), g.integer(-4, 4));
    else if (kind == 1) lp.add_variable(lo, kInf, g.integer(-1, 4));
    else if (kind == 2) lp.add_variable(-kInf, lo, g.integer(-4, 1));
    else lp.add_variable(0.0, 1.0, g.integer(-3, 3));
  }
  const int m = g.integer(0, 7);
  for (int i = 0; i < m; ++i) {
    Row r;
    for (int j = 0; j < n; ++j) {
      if (g.coin(0.6)) {
        r.index.push_back(j);
        r.coef.push_back(g.integer(-3, 3));
      }
    }
    r.sense = static_cast<Sense>(g.integer(0, 2));
    r.rhs = g.integer(-4, 6);
    lp.add_row(r);
  }
  return lp;
}

}  // namespace

TEST_CASE("two lower bounds on y") {
  LinearProgram lp;
  const int y = lp.add_variable(-kInf, kInf, 1.0);
  lp.add_row(row({y}, {1.0}, Sense::Ge, 3.0));
  lp.add_row(row({y}, {1.0}, Sense::Ge, 5.0));
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(5.0));
}

TEST_CASE("contradictory bounds give infeasible") {
  LinearProgram lp;
  const int x = lp.add_variable(-kInf, kInf, 0.0);
  lp.add_row(row({x}, {1.0}, Sense::Le, 0.0));
  lp.add_row(row({x}, {1.0}, Sense::Ge, 1.0));
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);
  CHECK(TableauSimplex().solve(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded direction is detected") {
  LinearProgram lp;
  const int x = lp.add_variable(0.0, kInf, -1.0);
  const int z = lp.add_variable(0.0, kInf, 0.0);
  lp.add_row(row({x, z}, {1.0, -1.0}, Sense::Le, 2.0));
  CHECK(solve_lp(lp).status == LpStatus::Unbounded);
  CHECK(TableauSimplex().solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("add_row_and_resolve") {
  LinearProgram lp;
  const int a = lp.add_variable(0.0, 1.0, -1.0);
  const int b = lp.add_variable(0.0, 1.0, -1.0);
  const int c = lp.add_variable(0.0, 1.0, -1.0);
  lp.add_row(row({a, b}, {1, 1}, Sense::Le, 1));
  lp.add_row(row({b, c}, {1, 1}, Sense::Le, 1));
  lp.add_row(row({a, c}, {1, 1}, Sense::Le, 1));
  const auto root = solve_lp(lp);
  REQUIRE(root.status == LpStatus::Optimal);
  CHECK(root.objective == doctest::Approx(-1.5));

  SUBCASE("redundant row keeps the objective") {
    const auto s = add_row_and_resolve(lp, row({a}, {1}, Sense::Le, 1), root);
    CHECK(s.objective == doctest::Approx(-1.5));
  }
  SUBCASE("violated clique row raises the objective") {
    const auto s = add_row_and_resolve(lp, row({a, b, c}, {1, 1, 1}, Sense::Le, 1), root);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(-1.0));
  }
  SUBCASE("row making the LP infeasible") {
    const auto s = add_row_and_resolve(lp, row({a, b, c}, {1, 1, 1}, Sense::Ge, 2.5), root);
    CHECK(s.status == LpStatus::Infeasible);
  }
}

TEST_CASE("add_row rejects malformed rows") {
  LinearProgram lp;
  lp.add_variable(0, 1, 0);
  CHECK_THROWS_AS(lp.add_row(row({1}, {1}, Sense::Le, 0)), ParameterError);
  CHECK_THROWS_AS(lp.add_row(row({0, 0}, {1, 1}, Sense::Le, 0)), ParameterError);
  CHECK_THROWS_AS(lp.add_variable(2, 1, 0), ParameterError);
}

TEST_CASE("revised and tableau backends agree on random LPs") {
  testing::Gen g(20240611);
  RevisedSimplex revised;
  TableauSimplex tableau;
  int optimal = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const LinearProgram lp = random_lp(g);
    const auto a = revised.solve(lp);
    const auto b = tableau.solve(lp);
    CAPTURE(trial);
    REQUIRE(a.status == b.status);
    if (a.status != LpStatus::Optimal) continue;
    ++optimal;
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
    CHECK(lp.max_violation(a.x) <= 1e-7);
    CHECK(lp.max_violation(b.x) <= 1e-7);
  }
  CHECK(optimal > 200);
}

TEST_CASE("warm start after bound changes matches a cold solve") {
  testing::Gen g(99);
  RevisedSimplex solver;
  for (int trial = 0; trial < 500; ++trial) {
    LinearProgram lp = random_lp(g);
    const auto first = solver.solve(lp);
    if (first.status != LpStatus::Optimal) continue;
    const int j = g.integer(0, lp.variables() - 1);
    const double v = std::round(first.x[j]);
    if (g.coin()) lp.set_bounds(j, lp.lower(j), std::max(lp.lower(j), v - 1));
    else lp.set_bounds(j, std::min(lp.upper(j), v + 1), lp.upper(j));
    const auto warm = solver.solve(lp, &first.basis);
    const auto cold = solver.solve(lp);
    CAPTURE(trial);
    REQUIRE(warm.status == cold.status);
    if (warm.status == LpStatus::Optimal) CHECK(warm.objective == doctest::Approx(cold.objective));
  }
}

TEST_CASE("identical LPs give bit-identical solutions") {
  testing::Gen g(5);
  for (int trial = 0; trial < 50; ++trial) {
    const LinearProgram lp = random_lp(g);
    const auto a = solve_lp(lp);
    const auto b = solve_lp(lp);
    CHECK(a.status == b.status);
    CHECK(a.x == b.x);
  }
}

TEST_CASE("MPS export uses fixed columns") {
  LinearProgram lp;
  lp.add_variable(0.0, 1.0, 0.0);
  lp.add_variable(0.0, kInf, 1.0);
  lp.add_row(row({0, 1}, {2.5, -1.0}, Sense::Le, 0.0));
  lp.add_row(row({0}, {1.0}, Sense::Ge, 1.0));
  std::ostringstream out;
  const std::vector<char> integer = {1, 0};
  write_mps(out, lp, integer, "T");
  const std::string expected =
      "NAME          T\n"
      "ROWS\n"
      " N  OBJ\n"
      " L  R1\n"
      " G  R2\n"
      "COLUMNS\n"
      "    MARKER0   'MARKER'                 'INTORG'\n"
      "    C1        R1                 2.5\n"
      "    C1        R2                   1\n"
      "    MARKER1   'MARKER'                 'INTEND'\n"
      "    C2        OBJ                  1\n"
      "    C2        R1                  -1\n"
      "RHS\n"
      "    RHS       R2                   1\n"
      "BOUNDS\n"
      " UP BND       C1                   1\n"
      "ENDATA\n";
  CHECK(out.str() == expected);
}
