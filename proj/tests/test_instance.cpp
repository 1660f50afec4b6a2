#include <cmath>

#include "doctest.h"
#include "pmc/error.hpp"
#include "pmc/instance.hpp"
#include "support.hpp"

using namespace pmc;

TEST_CASE("trivial lower bound") {
  CHECK(trivial_lower_bound(gen_bipartite(100, 1.0, 3, 1, 1, 0)) == 34);
  CHECK(trivial_lower_bound(make_instance("a", ConflictGraph(1), {7}, 2)) == 7);
  CHECK(trivial_lower_bound(make_instance("b", ConflictGraph(4), {1, 2, 3, 4}, 2)) == 5);
}

TEST_CASE("instance invariants") {
  CHECK_THROWS_AS(make_instance("x", ConflictGraph(2), {1, 0}, 2), ParameterError);
  CHECK_THROWS_AS(make_instance("x", ConflictGraph(2), {1, 1}, 1), ParameterError);
  CHECK_THROWS_AS(make_instance("x", ConflictGraph(2), {1}, 2), ParameterError);
}

TEST_CASE("schedule validation") {
  const auto inst = make_instance("p", testing::graph_of(3, {{0, 1}, {1, 2}}), {1, 2, 3}, 2);
  const auto good = make_schedule(inst, {0, 1, 0});
  CHECK(good.makespan == 4);
  CHECK(is_valid_schedule(inst, good));
  CHECK_FALSE(is_valid_schedule(inst, make_schedule(inst, {0, 0, 1})));
  CHECK_FALSE(is_valid_schedule(inst, make_schedule(inst, {0, 2, 0})));
  auto wrong = good;
  wrong.makespan = 3;
  CHECK_FALSE(is_valid_schedule(inst, wrong));
}

TEST_CASE("erdos-renyi generator") {
  CHECK(gen_erdos_renyi(10, 0.0, {1, 10}, 2, 1).graph.edge_count() == 0);
  CHECK(gen_erdos_renyi(10, 1.0, {1, 10}, 2, 1).graph.edge_count() == 45);
  CHECK_THROWS_AS(gen_erdos_renyi(10, 1.5, {1, 10}, 2, 1), ParameterError);
  CHECK_THROWS_AS(gen_erdos_renyi(10, 0.5, {0, 10}, 2, 1), ParameterError);
  CHECK_THROWS_AS(named_interval('d'), ParameterError);

  // Edge count of G(25, 0.5) is Binomial(300, 0.5): mean 150, sigma sqrt(75).
  const double sigma = std::sqrt(75.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = gen_erdos_renyi(25, 0.5, named_interval('a'), 5, seed);
    CHECK(std::abs(static_cast<double>(inst.graph.edge_count()) - 150.0) <= 3 * sigma);
    for (Time t : inst.p) CHECK((t >= 1 && t <= 10));
  }
  CHECK(write_instance(gen_erdos_renyi(30, 0.3, named_interval('c'), 4, 9)) ==
        write_instance(gen_erdos_renyi(30, 0.3, named_interval('c'), 4, 9)));
  CHECK(write_instance(gen_erdos_renyi(30, 0.3, named_interval('c'), 4, 9)) !=
        write_instance(gen_erdos_renyi(30, 0.3, named_interval('c'), 4, 10)));
}

TEST_CASE("bipartite generator") {
  CHECK(gen_bipartite(4, 0.0, 2, 3, 5, 1).graph.edge_count() == 0);
  const auto k33 = gen_bipartite(6, 1.0, 3, 1, 10, 1);
  CHECK(k33.graph.edge_count() == 9);
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) CHECK(k33.graph.adjacent(a, b));
  CHECK(k33.p == std::vector<Time>{1, 1, 1, 10, 10, 10});
  CHECK_THROWS_AS(gen_bipartite(5, 0.5, 2, 1, 1, 1), ParameterError);
}

TEST_CASE("parse the documented example") {
  const auto inst = parse_instance("p pmc 2 2\nw 1 3\nw 2 5\ne 1 2");
  CHECK(inst.jobs() == 2);
  CHECK(inst.m == 2);
  CHECK(inst.p == std::vector<Time>{3, 5});
  CHECK(inst.graph.adjacent(0, 1));
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("p pmc 2 2\nw 1 3\ne 1 2\n") > 0);  // missing w 2
  CHECK(line_of("p pmc 2 2\nw 1 3\nw 2 5\ne 1 1\n") == 4);
  CHECK(line_of("p pmc 2 2\nw 1 3\nw 2 5\ne 1 2\ne 1 2\n") == 5);
  CHECK(line_of("p pmc 2 2\nw 1 3\nw 3 5\n") == 3);
  CHECK(line_of("c hello\nw 1 3\n") == 2);
  CHECK(line_of("p pmc two 2\n") == 1);
  CHECK(line_of("p pmc 2 1\n") == 1);
  CHECK(line_of("p pmc 2 2\nw 1 0\n") == 2);
  CHECK(line_of("p pmc 2 2\nw 1 3\nw 2 5\nx 1\n") == 4);
  CHECK(line_of("# only comments\n") > 0);
}

TEST_CASE("write then parse is the identity") {
  testing::Gen gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = gen.instance(gen.integer(1, 20), gen.real(0.0, 1.0), gen.integer(2, 6), 100);
    inst.name = trial % 2 ? "named_" + std::to_string(trial) : "";
    CHECK(parse_instance(write_instance(inst)) == inst);
  }
}

TEST_CASE("instance names from paths") {
  CHECK(instance_name_from_path("dir/rand_25_0.5_a_1") == "rand_25_0.5_a_1");
  CHECK(instance_name_from_path("dir/k3.pmc") == "k3");
  CHECK(instance_name_from_path("k3.txt") == "k3");
}
