#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "swr/terrain_jump.hpp"

#include "oracles.hpp"

using namespace swr;

namespace {

constexpr double kG = 9.81;

// Independent route to psi: the factored form
// -y (a + b y)(y - (1 - zj)) + Fr^2 (1/theta - y).
double psi_factored(double y, const TerrainJumpParams& p) {
  const auto [a, b] = path_coefficients(p.theta);
  return -y * (a + b * y) * (y - (1.0 - p.z_jump_norm)) +
         p.fr2_minus * (1.0 / p.theta - y);
}

double direct_b(double theta) {
  const double d = theta - 1.0;
  return theta * (d - theta * std::log(theta)) / (d * d);
}

// psi at its positive local minimum (the quantity whose zeros in Fr^2 bound
// the non-existence window), via an independent fine scan of the derivative.
double psi_at_local_min(double theta, double zj, double fr2) {
  const TerrainJumpParams p{theta, zj, fr2};
  auto dpsi = [&](double y) { return psi_derivative(y, p); };
  const auto stat = oracle::scan_roots(dpsi, 1e-9, 50.0, 1e-3);
  REQUIRE(!stat.empty());
  return psi_eval(stat.back(), p);
}

}  // namespace

TEST_CASE("path coefficients at pinned thetas") {
  {
    const auto [a, b] = path_coefficients(1.0);
    CHECK(a == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(b == doctest::Approx(-0.5).epsilon(1e-12));
  }
  {
    const auto [a, b] = path_coefficients(2.0);
    // 2 (1 - 2 ln 2)
    CHECK(b == doctest::Approx(-0.772589).epsilon(1e-6));
    CHECK(a == doctest::Approx(-0.613706).epsilon(1e-6));
  }
  CHECK_THROWS_AS(path_coefficients(0.0), SolverError);
  CHECK_THROWS_AS(path_coefficients(-1.0), SolverError);
}

TEST_CASE("path coefficient identity and signs across twelve decades") {
  oracle::Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const double theta = rng.log_uniform(1e-2, 1e2);
    const auto [a, b] = path_coefficients(theta);
    CHECK(a < 0.0);
    CHECK(b < 0.0);
    CHECK(a + 2.0 > 0.0);
    CHECK(std::fabs(a + b / theta + 1.0) <= 1e-12);
  }
  for (double e : {1e-5, -1e-5, 1e-6, -1e-6, 1e-8, -1e-8, 0.0}) {
    const auto [a, b] = path_coefficients(1.0 + e);
    CHECK(a < 0.0);
    CHECK(b < 0.0);
    CHECK(std::fabs(a + b / (1.0 + e) + 1.0) <= 1e-12);
  }
}

TEST_CASE("series branch matches the direct formula at the crossover scale") {
  for (double e : {1e-3, -1e-3, 5e-4, -5e-4, 2e-4, -2e-4}) {
    const double theta = 1.0 + e;
    // the direct formula is still well-conditioned here
    CHECK(path_coefficients(theta).b ==
          doctest::Approx(direct_b(theta)).epsilon(1e-10));
  }
}

TEST_CASE("psi pinned evaluations") {
  // theta = 1, zj = 0, Fr = 0: psi = 0.5 y (y^2 - 1)
  const TerrainJumpParams p0{1.0, 0.0, 0.0};
  CHECK(psi_eval(1.0, p0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(psi_eval(2.0, p0) == doctest::Approx(0.5 * 2.0 * 3.0).epsilon(1e-13));
  // constant term
  const TerrainJumpParams p1{2.5, -0.3, 1.7};
  CHECK(psi_eval(0.0, p1) == doctest::Approx(1.7 / 2.5).epsilon(1e-14));
  // 1 - zj = 1/theta makes y = 1/theta a root regardless of Fr
  const double theta = 0.4;
  const TerrainJumpParams p2{theta, 1.0 - 1.0 / theta, 1.5};
  CHECK(std::fabs(psi_eval(1.0 / theta, p2)) <= 1e-13);
}

TEST_CASE("expanded and factored psi agree") {
  oracle::Rng rng(29);
  for (int i = 0; i < 1000; ++i) {
    const TerrainJumpParams p{rng.log_uniform(0.05, 20.0),
                              rng.uniform(-3.0, 3.0),
                              rng.log_uniform(1e-4, 30.0)};
    const double y = rng.log_uniform(1e-3, 30.0);
    const double lhs = psi_eval(y, p);
    const double rhs = psi_factored(y, p);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("psi_derivative matches finite differences") {
  oracle::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const TerrainJumpParams p{rng.log_uniform(0.1, 10.0),
                              rng.uniform(-2.0, 2.0),
                              rng.log_uniform(1e-3, 10.0)};
    const double y = rng.log_uniform(0.01, 10.0);
    const double dy = 1e-6 * std::max(1.0, y);
    const double fd = (psi_eval(y + dy, p) - psi_eval(y - dy, p)) / (2.0 * dy);
    CHECK(psi_derivative(y, p) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("classification: identity-terrain degenerate Fr = 0") {
  const RootClassification c = classify_and_solve({1.0, 0.0, 0.0});
  CHECK(c.kind == RootCase::TwoRootsLowTheta);
  // y = 0 is itself a root here, so a single positive root remains; this
  // matches the sign-change count of the cubic on (0, inf)
  REQUIRE(c.roots.size() == 1);
  CHECK(c.roots[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("classification: regime with roots on both sides of the marks") {
  const TerrainJumpParams p{2.0, -1.0, 1.0};  // 1/theta = 0.5 < 2 = 1 - zj
  const RootClassification c = classify_and_solve(p);
  CHECK(c.kind == RootCase::TwoRootsLowTheta);
  CHECK(!c.critical.has_value());
  REQUIRE(c.roots.size() == 2);
  CHECK(c.roots[0] < 0.5);
  CHECK(c.roots[1] > 2.0);
  CHECK(std::fabs(psi_eval(c.roots[0], p)) <= 1e-10);
  CHECK(std::fabs(psi_eval(c.roots[1], p)) <= 1e-10);
  // independent count: fine scan
  auto f = [&](double y) { return psi_eval(y, p); };
  const double hi = std::max({10.0, 2.0 * (1.0 - p.z_jump_norm), 2.0 / p.theta});
  CHECK(oracle::count_sign_changes(f, 1e-6, hi, 1e-6) == 2);
}

TEST_CASE("critical Froude window brackets the maximizer") {
  const double theta = 0.5, zj = 0.5;
  const CriticalFroude cf = critical_froude_numbers(theta, zj);
  const auto [a, b] = path_coefficients(theta);
  const double peak = 1.0 / theta + (a + 2.0) * (1.0 / theta - (1.0 - zj));
  CHECK(cf.fr2_low > 0.0);
  CHECK(cf.fr2_low < peak);
  CHECK(peak < cf.fr2_high);
  // frozen from an independent prototype of the same construction
  CHECK(cf.fr2_low == doctest::Approx(0.016928395244176).epsilon(1e-9));
  CHECK(cf.fr2_high == doctest::Approx(9.793690025377902).epsilon(1e-9));
  // both are genuine zeros of psi at its local minimum
  CHECK(std::fabs(psi_at_local_min(theta, zj, cf.fr2_low)) <= 1e-10);
  CHECK(std::fabs(psi_at_local_min(theta, zj, cf.fr2_high)) <= 1e-10);
  // mid-window: no roots; outside: two roots
  CHECK(classify_and_solve({theta, zj, 0.5 * (cf.fr2_low + cf.fr2_high)}).kind ==
        RootCase::NoRoots);
  CHECK(classify_and_solve({theta, zj, 0.5 * cf.fr2_low}).kind ==
        RootCase::TwoRootsBelow);
  CHECK(classify_and_solve({theta, zj, 1.5 * cf.fr2_high}).kind ==
        RootCase::TwoRootsAbove);
  CHECK_THROWS_AS(critical_froude_numbers(2.0, -1.0), SolverError);
}

TEST_CASE("psi at the window maximizer") {
  // at the maximizing Fr^2 the local minimum sits at 1/theta and psi there
  // equals (1/theta)(1/theta - (1 - zj))
  for (const auto& [theta, zj] : {std::pair{0.5, 0.5}, {0.3, 0.2}, {2.0, 0.8}}) {
    const auto [a, b] = path_coefficients(theta);
    const double w = 1.0 - zj;
    const double peak = 1.0 / theta + (a + 2.0) * (1.0 / theta - w);
    const double expect = (1.0 / theta) * (1.0 / theta - w);
    CHECK(psi_at_local_min(theta, zj, peak) ==
          doctest::Approx(expect).epsilon(1e-9));
    CHECK(psi_at_local_min(theta, zj, peak) > 0.0);
  }
}

TEST_CASE("root orderings in the windowed regime") {
  oracle::Rng rng(37);
  int below = 0, above = 0, closed = 0;
  for (int i = 0; i < 400; ++i) {
    const double theta = rng.log_uniform(0.1, 10.0);
    const double w_target = 1.0 / theta - rng.uniform(1e-3, 2.0);
    const double zj = 1.0 - w_target;  // 1/theta > 1 - zj
    const CriticalFroude cf = critical_froude_numbers(theta, zj);
    if (cf.fr2_low > 0.0) {
      const TerrainJumpParams p{theta, zj, 0.5 * cf.fr2_low};
      const RootClassification c = classify_and_solve(p);
      REQUIRE(c.kind == RootCase::TwoRootsBelow);
      REQUIRE(c.roots.size() == 2);
      CHECK(c.roots[1] <= 1.0 - zj + 1e-9);
      CHECK(1.0 - zj < 1.0 / theta);
      ++below;
    }
    const TerrainJumpParams q{theta, zj, 1.3 * cf.fr2_high};
    const RootClassification cq = classify_and_solve(q);
    REQUIRE(cq.kind == RootCase::TwoRootsAbove);
    REQUIRE(cq.roots.size() == 2);
    CHECK(cq.roots[0] >= 1.0 / theta - 1e-9);
    const TerrainJumpParams m{theta, zj,
                              cf.fr2_low +
                                  0.5 * (cf.fr2_high - cf.fr2_low)};
    if (classify_and_solve(m).kind == RootCase::NoRoots) ++closed;
    ++above;
  }
  CHECK(below > 100);
  CHECK(above == 400);
  CHECK(closed == 400);
}

TEST_CASE("tilde_fr pinned values and bounds") {
  CHECK(tilde_fr(2.0, 0.0) == doctest::Approx(0.639326).epsilon(1e-6));
  CHECK(tilde_fr(1.0, -1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK_THROWS_AS(tilde_fr(0.5, 0.5), SolverError);
  oracle::Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    const double theta = rng.log_uniform(0.1, 10.0);
    const double w = 1.0 / theta + rng.uniform(0.0, 3.0);
    const double zj = 1.0 - w;
    const double tf = tilde_fr(theta, zj);
    CHECK(tf >= 1.0 / theta - 1e-12);
    CHECK(tf <= w + 1e-12);
  }
}

TEST_CASE("selection energy pinned values") {
  CHECK(selection_energy(1.0, {1.0, 0.0, 0.0}) == 0.0);
  CHECK(selection_energy(0.5, {2.0, 0.0, 0.0}) == doctest::Approx(0.5));
}

TEST_CASE("energy ordering flips at tilde_fr") {
  oracle::Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const double theta = rng.log_uniform(0.2, 5.0);
    const double w = 1.0 / theta + rng.uniform(1e-3, 2.0);
    const double zj = 1.0 - w;
    const double tf = tilde_fr(theta, zj);
    for (double fr2 : {0.5 * tf, 1.5 * tf}) {
      const TerrainJumpParams p{theta, zj, fr2};
      const RootClassification c = classify_and_solve(p);
      REQUIRE(c.roots.size() == 2);
      const double e1 = selection_energy(c.roots[0], p);
      const double e2 = selection_energy(c.roots[1], p);
      if (fr2 < tf) {
        CHECK(e2 < e1);
      } else {
        CHECK(e1 < e2);
      }
    }
  }
}

TEST_CASE("tilde_fr equals the bisected energy-equality Froude number") {
  oracle::Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    const double theta = rng.log_uniform(0.2, 5.0);
    const double w = 1.0 / theta + rng.uniform(1e-3, 2.0);
    const double zj = 1.0 - w;
    auto ediff = [&](double fr2) {
      const TerrainJumpParams p{theta, zj, fr2};
      const RootClassification c = classify_and_solve(p);
      REQUIRE(c.roots.size() == 2);
      return selection_energy(c.roots[1], p) - selection_energy(c.roots[0], p);
    };
    const double tie = oracle::bisect(ediff, 1e-12, w + 1.0);
    CHECK(tie == doctest::Approx(tilde_fr(theta, zj)).epsilon(1e-8));
  }
}

TEST_CASE("solve_w3 identity terrain returns the upstream state") {
  const TerrainSide t{0.8, 0.3};
  for (double u : {0.0, 0.7, -1.2, 3.0}) {
    const HydraulicState minus{1.4, u};
    const auto res = solve_w3(minus, t, t, kG);
    REQUIRE(res.has_value());
    CHECK(res->beta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res->plus_state.h == doctest::Approx(minus.h).epsilon(1e-12));
    CHECK(res->plus_state.u == doctest::Approx(minus.u).epsilon(1e-12));
  }
}

TEST_CASE("solve_w3 on the equal-marks configuration picks the energy minimizer") {
  // 1 - zj = 1/theta with 1 < Fr^2 < 1/theta: the roots are 1/theta and the
  // quadratic root (a + sqrt(a^2 - 4 b Fr^2))/(-2b); E vanishes at 1/theta,
  // so that root is selected, keeping the identity limit continuous and the
  // sign law of the energy criterion intact.
  const double theta = 0.4;
  const double fr2 = 1.5;
  const double hm = 1.0;
  const double um = std::sqrt(fr2 * kG * hm);
  const TerrainSide tm{1.0, 0.0};
  const TerrainSide tp{theta, (1.0 - 1.0 / theta) * hm};
  const auto res = solve_w3({hm, um}, tm, tp, kG);
  REQUIRE(res.has_value());
  CHECK(res->beta == doctest::Approx(1.0 / theta).epsilon(1e-10));
  CHECK(res->selection_energy == doctest::Approx(0.0).epsilon(1e-10));
  // the quadratic root is present as the smaller of the two
  const auto [a, b] = path_coefficients(theta);
  const double quad = (a + std::sqrt(a * a - 4.0 * b * fr2)) / (-2.0 * b);
  const TerrainJumpParams p{theta, 1.0 - 1.0 / theta, fr2};
  const RootClassification c = classify_and_solve(p);
  REQUIRE(c.roots.size() == 2);
  CHECK(c.roots[0] == doctest::Approx(quad).epsilon(1e-10));
  // sign law for the selected root
  const double tf = tilde_fr(theta, 1.0 - 1.0 / theta);
  CHECK((fr2 - tf) * (res->fr2_plus - 1.0) > 0.0);
}

TEST_CASE("sign law over random draws") {
  oracle::Rng rng(53);
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    const double theta = rng.log_uniform(0.2, 5.0);
    const double w = 1.0 / theta + rng.uniform(1e-3, 2.0);
    const double zj = 1.0 - w;
    const double fr2 = rng.log_uniform(1e-3, 10.0);
    const double tf = tilde_fr(theta, zj);
    if (std::fabs(fr2 - tf) <= 1e-6) continue;
    const double hm = rng.log_uniform(0.1, 5.0);
    const double um = std::sqrt(fr2 * kG * hm);
    const TerrainSide tm{0.9, 0.1};
    const TerrainSide tp{0.9 * theta, 0.1 + zj * hm};
    const auto res = solve_w3({hm, um}, tm, tp, kG);
    REQUIRE(res.has_value());
    CHECK((fr2 - tf) * (res->fr2_plus - 1.0) > 0.0);
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("solve_w3 conserves the porosity mass flux exactly") {
  oracle::Rng rng(59);
  for (int i = 0; i < 500; ++i) {
    const double thm = rng.log_uniform(0.05, 1.0);
    const double thp = rng.log_uniform(0.05, 1.0);
    const double hm = rng.log_uniform(0.05, 5.0);
    const double zm = rng.uniform(-1.0, 1.0);
    const double zp = zm + rng.uniform(-2.0, 2.0) * hm;
    const double um = rng.uniform(-6.0, 6.0);
    const auto res = solve_w3({hm, um}, {thm, zm}, {thp, zp}, kG);
    if (!res) continue;
    const double lhs = thp * res->plus_state.h * res->plus_state.u;
    const double rhs = thm * hm * um;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    CHECK(std::fabs(psi_eval(res->beta,
                             make_jump_params({hm, um}, {thm, zm}, {thp, zp},
                                              kG))) <= 1e-10);
  }
}

TEST_CASE("selection stays continuous down to the identity") {
  // shrink the jumps along a fixed path; the selected ratio must approach 1
  const double fr2 = 0.5;
  double prev_gap = 1e9;
  for (double t : {1.0, 0.5, 0.1, 0.01}) {
    const double theta = 1.0 + t;
    const double zj = -0.5 * t;
    const double hm = 1.0;
    const double um = std::sqrt(fr2 * kG * hm);
    const auto res =
        solve_w3({hm, um}, {0.5, 0.0}, {0.5 * theta, zj * hm}, kG);
    REQUIRE(res.has_value());
    const double gap = std::fabs(res->beta - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.02);
}

TEST_CASE("generalized jump relations: identity contact is exact") {
  const HydraulicState minus{1.3, 2.1};
  const auto res = solve_w3(minus, {0.7, 0.2}, {0.7, 0.2}, kG);
  REQUIRE(res.has_value());
  const GrhResiduals r = verify_generalized_rh(minus, res->plus_state,
                                               {0.7, 0.2}, {0.7, 0.2}, kG, 64);
  CHECK(std::fabs(r.mass) <= 1e-12);
  CHECK(std::fabs(r.momentum) <= 1e-12);
}

TEST_CASE("generalized jump relations vanish on solved contacts") {
  oracle::Rng rng(61);
  int solved = 0;
  for (int i = 0; i < 800 && solved < 300; ++i) {
    const double thm = rng.log_uniform(0.05, 1.0);
    const double thp = rng.log_uniform(0.05, 1.0);
    const double hm = rng.log_uniform(0.05, 5.0);
    const double zm = rng.uniform(-1.0, 1.0);
    const double zp = zm + rng.uniform(-2.0, 2.0) * hm;
    const double um = rng.uniform(-6.0, 6.0);
    const TerrainSide tm{thm, zm}, tp{thp, zp};
    const auto res = solve_w3({hm, um}, tm, tp, kG);
    if (!res) continue;
    ++solved;
    const GrhResiduals r =
        verify_generalized_rh({hm, um}, res->plus_state, tm, tp, kG, 256);
    const double scale = thm * hm * um * um + 0.5 * kG * hm * hm;
    CHECK(std::fabs(r.mass) / scale <= 1e-8);
    CHECK(std::fabs(r.momentum) / scale <= 1e-8);
  }
  CHECK(solved >= 300);
}

TEST_CASE("quadrature detects a wrong root") {
  // concrete non-degenerate jump; 1% error in beta must push the momentum
  // residual far above the solver's own noise floor
  const HydraulicState minus{1.0, 2.0};
  const TerrainSide tm{0.5, 0.0};
  const TerrainSide tp{1.0, -0.3};
  const auto res = solve_w3(minus, tm, tp, kG);
  REQUIRE(res.has_value());
  const double beta = 1.01 * res->beta;
  const double theta = tp.theta / tm.theta;
  const HydraulicState wrong{beta * minus.h, minus.u / (theta * beta)};
  const GrhResiduals r = verify_generalized_rh(minus, wrong, tm, tp, kG, 256);
  CHECK(std::fabs(r.momentum) > 1e-4);
}

TEST_CASE("the path integral is reparametrization invariant") {
  const HydraulicState minus{1.0, 2.5};
  const TerrainSide tm{0.45, 0.0};
  const TerrainSide tp{0.9, -0.3};
  const auto res = solve_w3(minus, tm, tp, kG);
  REQUIRE(res.has_value());
  const GrhResiduals linear =
      verify_generalized_rh(minus, res->plus_state, tm, tp, kG, 256);
  const GrhResiduals quadratic = verify_generalized_rh(
      minus, res->plus_state, tm, tp, kG, 256,
      [](double s) { return s * s; }, [](double s) { return 2.0 * s; });
  CHECK(linear.momentum == doctest::Approx(quadratic.momentum).epsilon(1e-10));
  CHECK(linear.mass == quadratic.mass);
}

TEST_CASE("quadrature panel count is validated") {
  const HydraulicState s{1.0, 0.0};
  CHECK_THROWS_AS(
      verify_generalized_rh(s, s, {1.0, 0.0}, {1.0, 0.0}, kG, 8),
      SolverError);
}

TEST_CASE("root counts match a fine sign-change scan") {
  // step 1e-6 over the documented range, on representative parameter sets
  const TerrainJumpParams sets[] = {
      {2.0, -1.0, 1.0},  {0.5, 0.5, 0.008}, {0.5, 0.5, 1.0},
      {0.5, 0.5, 12.0},  {1.0, 0.0, 0.5},   {3.0, 0.4, 2.0},
  };
  for (const auto& p : sets) {
    const RootClassification c = classify_and_solve(p);
    auto f = [&](double y) { return psi_eval(y, p); };
    const double hi =
        std::max({10.0, 2.0 * (1.0 - p.z_jump_norm), 2.0 / p.theta});
    const int scanned = oracle::count_sign_changes(f, 1e-6, hi, 1e-6);
    const int reported =
        (c.roots.size() == 2 && c.roots[0] == c.roots[1]) ? 1
        : static_cast<int>(c.roots.size());
    CHECK(reported == scanned);
  }
}
