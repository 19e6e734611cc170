#ifndef SWR_CORE_HPP
#define SWR_CORE_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace swr {

/// Water column on one side of a discontinuity: depth h [m], velocity u [m/s].
struct HydraulicState {
  double h;
  double u;
};

/// Terrain data on one side: plant-cover porosity theta (fraction of plan
/// area open to flow) and bed elevation z [m].
struct TerrainSide {
  double theta;
  double z;
};

/// Piecewise-constant initial data separated at x = 0, plus gravity.
struct RiemannProblem {
  HydraulicState left;
  HydraulicState right;
  TerrainSide terrain_left;
  TerrainSide terrain_right;
  double g = 9.81;
};

enum class ErrorCode {
  NonPositiveHeight,
  PorosityOutOfRange,
  NonPositiveGravity,
  NotShockBranch,
  SupercriticalAnchor,
  NonPositiveTheta,
  WrongRegime,
  NoTerrainSolution,
  NoWetIntersection,
  NoIntersection,
  NoSonicLanding,
  NegativeInterposedShockSpeed,
  NeverSolvable,
  SupercriticalData,
  NotDamBreak,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Depths at or below this are treated as dry and rejected.
inline constexpr double kDryHeight = 1e-12;

struct ValidationOptions {
  /// Porosity is a plan-area fraction, so (0,1] by default; the wave math
  /// only needs theta > 0 and callers modelling amplified conveyance may
  /// lift the upper bound.
  bool allow_porosity_above_one = false;
};

/// Checks every invariant of the problem data and returns the problem
/// unchanged. Throws SolverError naming the offending field.
RiemannProblem validate_problem(const RiemannProblem& p,
                                const ValidationOptions& opts = {});

/// Fr^2 = u^2 / (g h).
double froude_squared(const HydraulicState& s, double g);

/// Signed Froude number u / sqrt(g h).
double froude_signed(const HydraulicState& s, double g);

enum class WaveKind { Rarefaction1, Shock1, TerrainContact, Rarefaction2, Shock2 };

enum class TypeLabel { ConstantTerrain, TypeI, TypeII, TypeIII };

const char* wave_kind_name(WaveKind kind);
const char* type_label_name(TypeLabel label);

/// One elementary wave. Shocks carry a single speed (s_head == s_tail);
/// the stationary terrain contact carries [0, 0]; rarefactions carry the
/// fan [head, tail]. upstream is the state on the left of the wave.
struct ElementaryWave {
  WaveKind kind;
  double s_head;
  double s_tail;
  HydraulicState upstream;
  HydraulicState downstream;
};

/// Ordered composition of elementary waves solving a Riemann problem.
/// states[i] sits left of waves[i]; states.back() is the right state.
struct WaveStructure {
  std::vector<ElementaryWave> waves;
  std::vector<HydraulicState> states;
  TypeLabel type_label = TypeLabel::ConstantTerrain;
  std::vector<std::string> notes;
};

}  // namespace swr

#endif
