#ifndef SWR_WAVE_CURVES_HPP
#define SWR_WAVE_CURVES_HPP

#include <vector>

#include "swr/core.hpp"

namespace swr {

enum class Family { Family1, Family2Backward };

/// Wave-curve handle for table emission: the anchor state, which family
/// issues from it, and gravity.
struct CurveAnchor {
  HydraulicState anchor;
  Family family;
  double g;
};

/// u on the 1-wave curve issuing from the left anchor: rarefaction branch
/// for h <= h_L, shock branch for h > h_L. Continuous at h = h_L.
double eval_w1(double h, const HydraulicState& left_anchor, double g);

/// u on the 2-backward wave curve reaching the right anchor (left states
/// connectable to it by a 2-wave).
double eval_w2b(double h, const HydraulicState& right_anchor, double g);

/// Shock speed at height h on the shock branch (h > anchor.h) of the given
/// family's curve. Throws NotShockBranch otherwise.
double shock_speed(Family family, double h, const HydraulicState& anchor,
                   double g);

/// Characteristic speed: u - sqrt(gh) for family 1, u + sqrt(gh) for
/// family 2.
double eigenvalue(Family family, const HydraulicState& s, double g);

/// Point on the 1-curve from a subcritical anchor where the flow turns
/// critical: h# = h_L (Fr_L + 2)^2 / 9, u# = sqrt(g h#).
/// Throws SupercriticalAnchor when Fr_L^2 >= 1.
HydraulicState sonic_point_on_w1(const HydraulicState& left_anchor, double g);

enum class BranchTag { Rarefaction, Shock };

struct CurvePoint {
  double h;
  double u;
  BranchTag branch;
  /// lambda of the family on the rarefaction branch, sigma on the shock
  /// branch.
  double wave_speed;
};

/// Tabulates the curve on [h_lo, h_hi] with n_points rows, uniform in h by
/// default, log-spaced on request (phase portraits near h -> 0 otherwise
/// oversample the flat part).
std::vector<CurvePoint> emit_curve(const CurveAnchor& anchor, double h_lo,
                                   double h_hi, int n_points,
                                   bool log_spacing = false);

}  // namespace swr

#endif
