#include "swr/terrain_jump.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swr/rootfind.hpp"

namespace swr {

namespace {

struct CubicCoeffs {
  // psi(y) = c3 y^3 + c2 y^2 + c1 y + c0
  double c3, c2, c1, c0;
};

CubicCoeffs cubic_coeffs(const TerrainJumpParams& p) {
  const auto [a, b] = path_coefficients(p.theta);
  const double w = 1.0 - p.z_jump_norm;
  return {-b, -(a - b * w), w * a - p.fr2_minus, p.fr2_minus / p.theta};
}

double eval_cubic(const CubicCoeffs& c, double y) {
  return ((c.c3 * y + c.c2) * y + c.c1) * y + c.c0;
}

double eval_cubic_scale(const CubicCoeffs& c, double y) {
  const double ay = std::fabs(y);
  return ((std::fabs(c.c3) * ay + std::fabs(c.c2)) * ay + std::fabs(c.c1)) *
             ay +
         std::fabs(c.c0);
}

// Safeguarded Newton inside a sign-change bracket [lo, hi].
double refine_root(const CubicCoeffs& c, double lo, double hi, double flo) {
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double f = eval_cubic(c, x);
    if (f == 0.0) return x;
    if ((f < 0.0) == (flo < 0.0)) {
      lo = x;
    } else {
      hi = x;
    }
    const double df = (3.0 * c.c3 * x + 2.0 * c.c2) * x + c.c1;
    double xn = (df != 0.0) ? x - f / df : 0.5 * (lo + hi);
    if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
    const double width = hi - lo;
    x = xn;
    if (width <= 1e-14 * std::max(std::fabs(x), 1e-300)) break;
    if (std::fabs(f) <= 1e-13 * eval_cubic_scale(c, x) &&
        width <= 1e-12 * std::max(std::fabs(x), 1.0)) {
      break;
    }
  }
  return x;
}

// Positive stationary points of psi; second entry is the local minimum
// (larger root of the upward parabola psi').
struct Stationary {
  bool has_min = false;
  double t_max = 0.0;  // meaningful only if has_min and t_max > 0
  double t_min = 0.0;
};

Stationary stationary_points(const CubicCoeffs& c) {
  Stationary st;
  const auto r = detail::quadratic_roots(3.0 * c.c3, 2.0 * c.c2, c.c1);
  if (r.size() < 2) return st;
  st.has_min = true;
  st.t_max = r[0];
  st.t_min = r[1];
  return st;
}

// Positive roots of psi, ascending. The marker `degenerate_zero` reports
// that y = 0 itself is a root (Fr^2 = 0), in which case only the root of
// the quadratic factor can be positive.
std::vector<double> positive_roots(const CubicCoeffs& c) {
  std::vector<double> roots;
  const Stationary st = stationary_points(c);
  if (!st.has_min || st.t_min <= 0.0) return roots;  // no dip on (0, inf)
  const double pmin = eval_cubic(c, st.t_min);
  if (pmin > 0.0) return roots;
  if (pmin == 0.0) {
    roots.push_back(st.t_min);
    roots.push_back(st.t_min);
    return roots;
  }
  // lower root: bracket from the last point left of t_min where psi > 0
  double lo = -1.0;
  if (st.t_max > 0.0 && eval_cubic(c, st.t_max) > 0.0) {
    lo = st.t_max;
  } else if (eval_cubic(c, 0.0) > 0.0) {
    lo = 0.0;
  }
  if (lo >= 0.0) {
    roots.push_back(refine_root(c, lo, st.t_min, eval_cubic(c, lo)));
  }
  // upper root: expand right of t_min until psi > 0
  double hi = st.t_min;
  double step = std::max(st.t_min, 1.0);
  while (eval_cubic(c, hi) <= 0.0) {
    hi += step;
    step *= 2.0;
  }
  roots.push_back(refine_root(c, st.t_min, hi, pmin));
  std::sort(roots.begin(), roots.end());
  // coincidence: collapse to a double root
  if (roots.size() == 2 &&
      roots[1] - roots[0] <= 1e-9 * std::max(1.0, roots[1])) {
    const double mid = 0.5 * (roots[0] + roots[1]);
    roots[0] = roots[1] = mid;
  }
  return roots;
}

void require_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    std::ostringstream msg;
    msg << "porosity ratio theta must be > 0; got " << theta;
    throw SolverError(ErrorCode::NonPositiveTheta, msg.str());
  }
}

}  // namespace

PathCoefficients path_coefficients(double theta) {
  require_theta(theta);
  double b;
  if (std::fabs(theta - 1.0) < 1e-4) {
    // series of theta(theta-1-theta log theta)/(theta-1)^2 about theta = 1
    const double e = theta - 1.0;
    b = -0.5 - e / 3.0 + e * e / 12.0 - e * e * e / 30.0 +
        e * e * e * e / 60.0;
  } else {
    const double d = theta - 1.0;
    b = theta * (d - theta * std::log(theta)) / (d * d);
  }
  return {-1.0 - b / theta, b};
}

TerrainJumpParams make_jump_params(const HydraulicState& minus,
                                   const TerrainSide& tm, const TerrainSide& tp,
                                   double g) {
  return {tp.theta / tm.theta, (tp.z - tm.z) / minus.h,
          froude_squared(minus, g)};
}

double psi_eval(double y, const TerrainJumpParams& p) {
  return eval_cubic(cubic_coeffs(p), y);
}

double psi_derivative(double y, const TerrainJumpParams& p) {
  const CubicCoeffs c = cubic_coeffs(p);
  return (3.0 * c.c3 * y + 2.0 * c.c2) * y + c.c1;
}

const char* root_case_name(RootCase c) {
  switch (c) {
    case RootCase::TwoRootsLowTheta: return "TwoRootsLowTheta";
    case RootCase::TwoRootsBelow: return "TwoRootsBelow";
    case RootCase::TwoRootsAbove: return "TwoRootsAbove";
    case RootCase::NoRoots: return "NoRoots";
  }
  return "Unknown";
}

CriticalFroude critical_froude_numbers(double theta, double z_jump_norm) {
  require_theta(theta);
  const double w = 1.0 - z_jump_norm;
  if (1.0 / theta <= w) {
    std::ostringstream msg;
    msg << "critical Froude window needs 1/theta > 1 - zjump; got 1/theta = "
        << 1.0 / theta << ", 1 - zjump = " << w;
    throw SolverError(ErrorCode::WrongRegime, msg.str());
  }
  const auto [a, b] = path_coefficients(theta);
  // psi at the local minimum, as a function of Fr^2; unimodal with its
  // maximum where the minimizer crosses 1/theta.
  auto psi2 = [&](double fr2) {
    const CubicCoeffs c = cubic_coeffs({theta, z_jump_norm, fr2});
    const Stationary st = stationary_points(c);
    if (!st.has_min || st.t_min <= 0.0) return 1.0;  // no dip: treat as > 0
    return eval_cubic(c, st.t_min);
  };
  const double peak = 1.0 / theta + (a + 2.0) * (1.0 / theta - w);
  CriticalFroude out{0.0, 0.0};
  // rising side: zero exists iff psi2 starts negative, i.e. 1 - zjump > 0
  const double p0 = psi2(0.0);
  if (p0 < 0.0) {
    out.fr2_low = detail::bisect(psi2, 0.0, peak, p0);
  } else if (p0 == 0.0) {
    out.fr2_low = 0.0;
  } else {
    out.fr2_low = 0.0;  // window reaches down to Fr = 0
  }
  // falling side
  double hi = peak;
  double step = std::max(peak, 1.0);
  while (psi2(hi) >= 0.0) {
    hi += step;
    step *= 2.0;
  }
  out.fr2_high = detail::bisect(psi2, peak, hi, psi2(peak));
  return out;
}

RootClassification classify_and_solve(const TerrainJumpParams& p) {
  require_theta(p.theta);
  RootClassification out;
  const CubicCoeffs c = cubic_coeffs(p);
  std::vector<double> roots = positive_roots(c);
  // a root at (or numerically at) zero is not a depth ratio
  roots.erase(std::remove_if(roots.begin(), roots.end(),
                             [](double r) { return r <= 1e-13; }),
              roots.end());
  out.roots = std::move(roots);
  const double w = 1.0 - p.z_jump_norm;
  if (1.0 / p.theta <= w) {
    out.kind = out.roots.empty() ? RootCase::NoRoots
                                 : RootCase::TwoRootsLowTheta;
    return out;
  }
  out.critical = critical_froude_numbers(p.theta, p.z_jump_norm);
  if (out.roots.empty()) {
    out.kind = RootCase::NoRoots;
    return out;
  }
  const auto [a, b] = path_coefficients(p.theta);
  const double peak = 1.0 / p.theta + (a + 2.0) * (1.0 / p.theta - w);
  out.kind = p.fr2_minus < peak ? RootCase::TwoRootsBelow
                                : RootCase::TwoRootsAbove;
  return out;
}

double tilde_fr(double theta, double z_jump_norm) {
  require_theta(theta);
  const double w = 1.0 - z_jump_norm;
  if (1.0 / theta > w) {
    std::ostringstream msg;
    msg << "tilde_fr needs 1/theta <= 1 - zjump; got 1/theta = " << 1.0 / theta
        << ", 1 - zjump = " << w;
    throw SolverError(ErrorCode::WrongRegime, msg.str());
  }
  const auto [a, b] = path_coefficients(theta);
  return 1.0 / theta + (-b / (-b + theta)) * (w - 1.0 / theta);
}

double selection_energy(double y, const TerrainJumpParams& p) {
  return std::max(std::fabs(1.0 / p.theta - y),
                  std::fabs(1.0 - p.z_jump_norm - y));
}

std::optional<ThreeWaveResult> solve_w3(const HydraulicState& minus,
                                        const TerrainSide& tm,
                                        const TerrainSide& tp, double g) {
  const TerrainJumpParams p = make_jump_params(minus, tm, tp, g);
  const RootClassification cls = classify_and_solve(p);
  if (cls.roots.empty()) return std::nullopt;
  // argmin of E; exact ties go to the larger root, the one continuous with
  // the subcritical branch
  double beta = cls.roots.back();
  double energy = selection_energy(beta, p);
  for (auto it = cls.roots.rbegin(); it != cls.roots.rend(); ++it) {
    const double e = selection_energy(*it, p);
    if (e < energy) {
      beta = *it;
      energy = e;
    }
  }
  ThreeWaveResult res;
  res.beta = beta;
  res.plus_state = {beta * minus.h, minus.u / (p.theta * beta)};
  res.fr2_plus = p.fr2_minus / (p.theta * p.theta * beta * beta * beta);
  res.selection_energy = energy;
  return res;
}

namespace {

GrhResiduals grh_impl(const HydraulicState& minus, const HydraulicState& plus,
                      const TerrainSide& tm, const TerrainSide& tp, double g,
                      int n_quad, const std::function<double(double)>& phi,
                      const std::function<double(double)>& dphi) {
  if (n_quad < 16) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "generalized jump relations need n_quad >= 16");
  }
  GrhResiduals r;
  r.mass = tp.theta * plus.h * plus.u - tm.theta * minus.h * minus.u;
  const double dz = tp.z - tm.z;
  const double dh = plus.h - minus.h;
  auto integrand = [&](double s) {
    const double f = phi(s);
    const double h = minus.h + f * dh;
    const double theta =
        tm.theta +
        (tm.theta * f / (tm.theta * f + (1.0 - f) * tp.theta)) *
            (tp.theta - tm.theta);
    return theta * h * (dz + dh) * dphi(s);
  };
  const double integral = detail::integrate_01(integrand, n_quad);
  r.momentum = (tp.theta * plus.h * plus.u * plus.u -
                tm.theta * minus.h * minus.u * minus.u) +
               g * integral;
  return r;
}

}  // namespace

GrhResiduals verify_generalized_rh(const HydraulicState& minus,
                                   const HydraulicState& plus,
                                   const TerrainSide& tm, const TerrainSide& tp,
                                   double g, int n_quad) {
  return grh_impl(minus, plus, tm, tp, g, n_quad,
                  [](double s) { return s; }, [](double) { return 1.0; });
}

GrhResiduals verify_generalized_rh(const HydraulicState& minus,
                                   const HydraulicState& plus,
                                   const TerrainSide& tm, const TerrainSide& tp,
                                   double g, int n_quad,
                                   const std::function<double(double)>& phi,
                                   const std::function<double(double)>& dphi) {
  return grh_impl(minus, plus, tm, tp, g, n_quad, phi, dphi);
}

}  // namespace swr
