#include "doctest.h"
#include "helpers.hpp"
#include "stlmon/system.hpp"

using namespace stlmon;
using namespace stlmon::testing;

TEST_CASE("quadratic dynamics evaluate by direct substitution") {
  SystemModel m = case1_model();
  Point next = step_dynamics(m, Point{3.0}, Point{0.5});
  CHECK(next[0] == doctest::Approx(2.78));
}

TEST_CASE("planar affine dynamics scale the control per axis") {
  SystemModel m = case2_model();
  Point next = step_dynamics(m, Point{1.0, 1.0}, Point{1.0, -1.0});
  CHECK(next[0] == doctest::Approx(1.9));
  CHECK(next[1] == doctest::Approx(0.2));

  // identity A with zero control leaves the state unchanged
  Point still = step_dynamics(m, Point{4.25, 3.5}, Point{0.0, 0.0});
  CHECK(still[0] == doctest::Approx(4.25));
  CHECK(still[1] == doctest::Approx(3.5));
}

TEST_CASE("step rejects dimension mismatches and unflagged bound violations") {
  SystemModel m = case1_model();
  CHECK_THROWS_AS(step_dynamics(m, Point{1.0, 2.0}, Point{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(step_dynamics(m, Point{1.0}, Point{0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(step_dynamics(m, Point{9.0}, Point{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(step_dynamics(m, Point{1.0}, Point{7.0}), std::invalid_argument);
  CHECK_NOTHROW(step_dynamics(m, Point{9.0}, Point{0.0}, /*unchecked=*/true));

  // no clamping: out-of-bounds images are returned as computed
  Point out = step_dynamics(m, Point{5.0}, Point{1.0});
  CHECK(out[0] == doctest::Approx(6.8));
}

TEST_CASE("simulate chains the dynamics and excludes the seed state") {
  SystemModel m = case1_model();
  Trace t = simulate(m, Point{3.0}, {Point{0.5}});
  REQUIRE(t.length() == 1);
  CHECK(t.start == 1);
  CHECK(t.states[0][0] == doctest::Approx(2.78));

  Trace empty = simulate(m, Point{3.0}, {});
  CHECK(empty.length() == 0);

  CHECK_THROWS_AS(simulate(m, Point{3.0}, {Point{2.0}}), std::invalid_argument);
}

TEST_CASE("simulate is the fold of step_dynamics") {
  SystemModel m = case2_model();
  std::mt19937 rng(7);
  for (int it = 0; it < 50; ++it) {
    Point x{uniform(rng, 0, 10), uniform(rng, 0, 6)};
    std::vector<Point> controls;
    for (int j = 0; j < 5; ++j) {
      controls.push_back({uniform(rng, -1, 1), uniform(rng, -1, 1)});
    }
    Trace t = simulate(m, x, controls, 3);
    CHECK(t.start == 4);
    Point cur = x;
    for (int j = 0; j < 5; ++j) {
      cur = step_dynamics(m, cur, controls[static_cast<size_t>(j)], true);
      CHECK(t.states[static_cast<size_t>(j)] == cur);
    }
  }
}

TEST_CASE("per-step increments are bounded by the control gains") {
  SystemModel m = case2_model();
  std::mt19937 rng(8);
  for (int it = 0; it < 50; ++it) {
    Point x{uniform(rng, 1, 9), uniform(rng, 1, 5)};
    std::vector<Point> controls;
    for (int j = 0; j < 4; ++j) {
      controls.push_back({uniform(rng, -1, 1), uniform(rng, -1, 1)});
    }
    Trace t = simulate(m, x, controls);
    Point prev = x;
    for (const Point& s : t.states) {
      CHECK(std::abs(s[0] - prev[0]) <= 0.9 + 1e-12);
      CHECK(std::abs(s[1] - prev[1]) <= 0.8 + 1e-12);
      prev = s;
    }
  }
}

TEST_CASE("system configs load with validation") {
  SystemModel c1 = case1_model();
  CHECK(c1.state_dim == 1);
  CHECK(c1.state_bounds.dims[0] == Interval{0, 5});
  CHECK(c1.control_bounds.dims[0] == Interval{-1, 1});

  SystemModel c2 = case2_model();
  CHECK(c2.state_dim == 2);
  CHECK(c2.state_bounds.dims[1] == Interval{0, 6});

  CHECK_THROWS_AS(load_system(R"({"name":"bad","dim":2,"control_dim":1,
    "state_bounds":[[0,1],[0,1]],"control_bounds":[[0,1]],
    "dynamics":{"kind":"affine","A":[[1,0]],"B":[[1],[1]]}})"),
                  std::invalid_argument);  // A has the wrong shape
  CHECK_THROWS_AS(load_system(R"({"name":"bad","dim":1,"control_dim":1,
    "state_bounds":[[0,1]],"control_bounds":[[0,1]],
    "dynamics":{"kind":"builtin","name":"nonexistent"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_system("not json"), std::invalid_argument);
  CHECK_THROWS_AS(load_system(R"({"name":"bad","dim":1,"control_dim":1,
    "state_bounds":[[2,1]],"control_bounds":[[0,1]],
    "dynamics":{"kind":"poly1d","coeffs":[0]}})"),
                  std::invalid_argument);  // empty interval
}

TEST_CASE("builtin registry matches the explicit dynamics") {
  SystemModel builtin = load_system(R"({"name":"case1b","dim":1,"control_dim":1,
    "state_bounds":[[0,5]],"control_bounds":[[-1,1]],
    "dynamics":{"kind":"builtin","name":"case1"}})");
  SystemModel poly = case1_model();
  std::mt19937 rng(9);
  for (int it = 0; it < 20; ++it) {
    Point x{uniform(rng, 0, 5)};
    Point u{uniform(rng, -1, 1)};
    CHECK(step_dynamics(builtin, x, u)[0] ==
          doctest::Approx(step_dynamics(poly, x, u)[0]));
  }
}
