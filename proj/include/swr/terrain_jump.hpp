#ifndef SWR_TERRAIN_JUMP_HPP
#define SWR_TERRAIN_JUMP_HPP

#include <functional>
#include <optional>
#include <vector>

#include "swr/core.hpp"

// The stationary wave carried by the jump in (theta, z). The downstream
// state follows from the upstream one through a cubic whose positive roots
// are the admissible nondimensional depths beta = h+/h-; among them the one
// minimizing the discontinuity magnitude E is taken.

namespace swr {

/// Nondimensional data of a terrain jump as seen from the upstream side:
/// porosity ratio theta = theta+/theta-, bed step (z+ - z-)/h-, and the
/// upstream Froude number squared.
struct TerrainJumpParams {
  double theta;
  double z_jump_norm;
  double fr2_minus;
};

TerrainJumpParams make_jump_params(const HydraulicState& minus,
                                   const TerrainSide& terrain_minus,
                                   const TerrainSide& terrain_plus, double g);

/// Path-integral weights of the momentum closure. Both are negative for
/// every theta > 0 and satisfy a + b/theta = -1.
struct PathCoefficients {
  double a;
  double b;
};

/// b = theta (theta - 1 - theta log theta) / (theta - 1)^2, a = -1 - b/theta.
/// The quotient is 0/0 at theta = 1, so |theta - 1| < 1e-4 switches to the
/// Taylor series about 1.
PathCoefficients path_coefficients(double theta);

/// The terrain-jump cubic in the nondimensional downstream depth y.
double psi_eval(double y, const TerrainJumpParams& p);

/// d psi / d y.
double psi_derivative(double y, const TerrainJumpParams& p);

enum class RootCase {
  TwoRootsLowTheta,  ///< 1/theta <= 1 - zjump: roots straddle both marks
  TwoRootsBelow,     ///< 1/theta > 1 - zjump, Fr^2 below the window
  TwoRootsAbove,     ///< 1/theta > 1 - zjump, Fr^2 above the window
  NoRoots,           ///< Fr^2 inside the non-existence window
};

const char* root_case_name(RootCase c);

/// The Fr^2 window (fr2_low, fr2_high) on which the cubic has no positive
/// root. fr2_low degenerates to 0 when 1 - zjump <= 0 (no low-side branch).
struct CriticalFroude {
  double fr2_low;
  double fr2_high;
};

/// Positive roots of the cubic plus the regime bookkeeping. `roots` is
/// ascending and holds 0, 1, or 2 entries; the single-root case occurs only
/// on the degenerate boundary Fr^2 = 0, where one root sits exactly at 0 and
/// is excluded. Coincident roots are reported twice.
struct RootClassification {
  RootCase kind;
  std::vector<double> roots;
  std::optional<CriticalFroude> critical;  ///< present iff 1/theta > 1-zjump
};

RootClassification classify_and_solve(const TerrainJumpParams& p);

/// The two zeros of Fr^2 -> psi(local-min), bracketing the window of
/// non-existence. Requires 1/theta > 1 - zjump (WrongRegime otherwise).
CriticalFroude critical_froude_numbers(double theta, double z_jump_norm);

/// The Fr^2 value at which the two roots have equal selection energy,
/// in the regime 1/theta <= 1 - zjump (WrongRegime otherwise). Lies between
/// 1/theta and 1 - zjump.
double tilde_fr(double theta, double z_jump_norm);

/// E(y) = max{|1/theta - y|, |1 - zjump - y|}: the larger of the free
/// surface and velocity discontinuity magnitudes at depth ratio y.
double selection_energy(double y, const TerrainJumpParams& p);

struct ThreeWaveResult {
  double beta;                ///< selected h+/h-
  HydraulicState plus_state;  ///< (beta h-, u-/(theta beta))
  double fr2_plus;            ///< Fr^2- / (theta^2 beta^3)
  double selection_energy;    ///< E(beta)
};

/// Stationary 3-wave across the terrain jump. Empty when the cubic has no
/// positive root (a first-class outcome: the jump admits no steady
/// connection at this Froude number). Tie in E selects the larger root.
std::optional<ThreeWaveResult> solve_w3(const HydraulicState& minus,
                                        const TerrainSide& terrain_minus,
                                        const TerrainSide& terrain_plus,
                                        double g);

/// Residuals of the generalized jump relations across a candidate 3-wave.
struct GrhResiduals {
  double mass;      ///< theta+ h+ u+ - theta- h- u-
  double momentum;  ///< [[theta h u^2]] + g * path integral of theta h d(z+h)
};

/// Evaluates the jump relations by composite Gauss-Legendre quadrature of
/// the path integral on n_quad panels (n_quad >= 16), with the linear
/// parametrization phi(s) = s.
GrhResiduals verify_generalized_rh(const HydraulicState& minus,
                                   const HydraulicState& plus,
                                   const TerrainSide& terrain_minus,
                                   const TerrainSide& terrain_plus, double g,
                                   int n_quad);

/// Same with a caller-supplied monotone reparametrization phi, phi(0)=0,
/// phi(1)=1, and its derivative. The integral value is phi-independent for
/// this path family; the overload exists to check that, not to tune it.
GrhResiduals verify_generalized_rh(const HydraulicState& minus,
                                   const HydraulicState& plus,
                                   const TerrainSide& terrain_minus,
                                   const TerrainSide& terrain_plus, double g,
                                   int n_quad,
                                   const std::function<double(double)>& phi,
                                   const std::function<double(double)>& dphi);

}  // namespace swr

#endif
