#include "swr/wave_curves.hpp"

#include <cmath>
#include <sstream>

namespace swr {

namespace {

void require_positive_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    std::ostringstream msg;
    msg << "curve height h must be > 0; got " << h;
    throw SolverError(ErrorCode::NonPositiveHeight, msg.str());
  }
}

}  // namespace

double eval_w1(double h, const HydraulicState& a, double g) {
  require_positive_h(h);
  if (h <= a.h) {
    return a.u + 2.0 * std::sqrt(g * a.h) * (1.0 - std::sqrt(h / a.h));
  }
  return a.u + std::sqrt(g * a.h) * (1.0 - h / a.h) *
                   std::sqrt(0.5 * (1.0 + a.h / h));
}

double eval_w2b(double h, const HydraulicState& a, double g) {
  require_positive_h(h);
  if (h <= a.h) {
    return a.u - 2.0 * std::sqrt(g * a.h) * (1.0 - std::sqrt(h / a.h));
  }
  return a.u - std::sqrt(g * a.h) * (1.0 - h / a.h) *
                   std::sqrt(0.5 * (1.0 + a.h / h));
}

double shock_speed(Family family, double h, const HydraulicState& a,
                   double g) {
  require_positive_h(h);
  if (h <= a.h) {
    std::ostringstream msg;
    msg << "shock branch needs h > anchor.h; got h = " << h
        << ", anchor.h = " << a.h;
    throw SolverError(ErrorCode::NotShockBranch, msg.str());
  }
  const double c = std::sqrt(g * h) * std::sqrt(0.5 * (1.0 + h / a.h));
  return family == Family::Family1 ? a.u - c : a.u + c;
}

double eigenvalue(Family family, const HydraulicState& s, double g) {
  const double c = std::sqrt(g * s.h);
  return family == Family::Family1 ? s.u - c : s.u + c;
}

HydraulicState sonic_point_on_w1(const HydraulicState& a, double g) {
  const double fr = froude_signed(a, g);
  if (fr * fr >= 1.0) {
    std::ostringstream msg;
    msg << "sonic point on the 1-curve needs a subcritical anchor; Fr^2 = "
        << fr * fr;
    throw SolverError(ErrorCode::SupercriticalAnchor, msg.str());
  }
  const double hs = a.h * (fr + 2.0) * (fr + 2.0) / 9.0;
  return {hs, std::sqrt(g * hs)};
}

std::vector<CurvePoint> emit_curve(const CurveAnchor& anchor, double h_lo,
                                   double h_hi, int n_points,
                                   bool log_spacing) {
  if (n_points < 2) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "emit_curve needs n_points >= 2");
  }
  if (!(h_lo > 0.0) || !(h_hi > h_lo)) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "emit_curve needs 0 < h_lo < h_hi");
  }
  std::vector<CurvePoint> rows;
  rows.reserve(n_points);
  const double llo = std::log(h_lo), lhi = std::log(h_hi);
  for (int i = 0; i < n_points; ++i) {
    const double s = static_cast<double>(i) / (n_points - 1);
    const double h = log_spacing ? std::exp(llo + s * (lhi - llo))
                                 : h_lo + s * (h_hi - h_lo);
    const bool raref = h <= anchor.anchor.h;
    double u, speed;
    if (anchor.family == Family::Family1) {
      u = eval_w1(h, anchor.anchor, anchor.g);
      speed = raref ? eigenvalue(Family::Family1, {h, u}, anchor.g)
                    : shock_speed(Family::Family1, h, anchor.anchor, anchor.g);
    } else {
      u = eval_w2b(h, anchor.anchor, anchor.g);
      speed = raref
                  ? eigenvalue(Family::Family2Backward, {h, u}, anchor.g)
                  : shock_speed(Family::Family2Backward, h, anchor.anchor,
                                anchor.g);
    }
    rows.push_back({h, u, raref ? BranchTag::Rarefaction : BranchTag::Shock,
                    speed});
  }
  return rows;
}

}  // namespace swr
