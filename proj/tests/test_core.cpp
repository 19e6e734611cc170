#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swr/core.hpp"

#include "oracles.hpp"

using namespace swr;

namespace {

RiemannProblem dam_break(double hl, double hr, double g = 9.81) {
  return {{hl, 0.0}, {hr, 0.0}, {1.0, 0.0}, {1.0, 0.0}, g};
}

}  // namespace

TEST_CASE("validate_problem accepts the classic dam break") {
  const RiemannProblem p = dam_break(1.0, 0.1);
  CHECK_NOTHROW(validate_problem(p));
}

TEST_CASE("validate_problem rejects dry right state") {
  RiemannProblem p = dam_break(1.0, 0.0);
  try {
    validate_problem(p);
    FAIL("expected NonPositiveHeight");
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::NonPositiveHeight);
    CHECK(std::string(e.what()).find("right.h") != std::string::npos);
  }
}

TEST_CASE("validate_problem rejects porosity above 1") {
  RiemannProblem p = dam_break(1.0, 0.1);
  p.terrain_right.theta = 1.5;
  try {
    validate_problem(p);
    FAIL("expected PorosityOutOfRange");
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::PorosityOutOfRange);
    CHECK(std::string(e.what()).find("right.theta") != std::string::npos);
  }
  ValidationOptions opts;
  opts.allow_porosity_above_one = true;
  CHECK_NOTHROW(validate_problem(p, opts));
}

TEST_CASE("validate_problem rejects nonpositive gravity") {
  RiemannProblem p = dam_break(1.0, 0.1);
  p.g = 0.0;
  try {
    validate_problem(p);
    FAIL("expected NonPositiveGravity");
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::NonPositiveGravity);
  }
}

TEST_CASE("validate_problem is idempotent") {
  const RiemannProblem p = dam_break(1.0, 0.1);
  const RiemannProblem q = validate_problem(validate_problem(p));
  CHECK(q.left.h == p.left.h);
  CHECK(q.right.h == p.right.h);
  CHECK(q.g == p.g);
}

TEST_CASE("froude_squared examples") {
  CHECK(froude_squared({1.0, 0.0}, 9.81) == 0.0);
  CHECK(froude_squared({1.0, 3.1321}, 9.81) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(froude_squared({0.25, 3.1321}, 9.81) ==
        doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("froude_squared is quadratically homogeneous in u") {
  oracle::Rng rng(42);
  for (int i = 0; i < 300; ++i) {
    const double h = rng.log_uniform(1e-3, 1e3);
    const double u = rng.uniform(-20.0, 20.0);
    const double k = rng.uniform(0.1, 10.0);
    const double base = froude_squared({h, u}, 9.81);
    const double scaled = froude_squared({h, k * u}, 9.81);
    CHECK(scaled == doctest::Approx(k * k * base).epsilon(1e-14));
  }
}
