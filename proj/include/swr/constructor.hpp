#ifndef SWR_CONSTRUCTOR_HPP
#define SWR_CONSTRUCTOR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "swr/core.hpp"
#include "swr/terrain_jump.hpp"

namespace swr {

/// One sample of the composite curve: the 1-wave parameter h, the state the
/// 1-wave reaches there, and the 3-wave landing behind the terrain jump.
struct CompositeSample {
  double h_on_w1;
  HydraulicState upstream;
  HydraulicState downstream;
  double beta;
  double fr2_plus;  ///< signed-square: (Fr of downstream)^2
};

enum class BoundaryReason { Gap, SelectionJump, FroudeCrossing };

struct BranchBoundary {
  std::size_t index_before;  ///< boundary lies after samples[index_before]
  BoundaryReason reason;
};

/// The curve of 3-wave landings over the admissible segment of the 1-wave
/// curve, split into maximal continuous branches. Where the terrain
/// equation has no solution the parameter interval is recorded as the gap.
struct CompositeCurve {
  std::vector<CompositeSample> samples;  ///< descending in h_on_w1
  std::vector<std::pair<std::size_t, std::size_t>> branches;  ///< [begin,end)
  std::vector<BranchBoundary> boundaries;
  std::optional<std::pair<double, double>> gap;  ///< failed h range (lo, hi)
};

/// Samples the composite curve for h in [h_lo, left-state sonic height
/// .. h_L]. h_lo defaults to the sonic height; the left state must be
/// subcritical.
CompositeCurve build_composite_curve(const HydraulicState& left,
                                     const TerrainSide& terrain_left,
                                     const TerrainSide& terrain_right,
                                     double g,
                                     std::optional<double> h_lo = {},
                                     int n_samples = 2048);

/// Lowest h on the 1-curve at which the terrain jump is still solvable,
/// for the regime theta_R < theta_L, z_R > z_L. Bisects the
/// success/failure boundary to 1e-10 * h_L and returns the solvable side.
double find_h_c(const HydraulicState& left, const TerrainSide& terrain_left,
                const TerrainSide& terrain_right, double g);

/// Classical two-wave construction when the terrain carries no jump.
WaveStructure solve_constant_terrain(const RiemannProblem& p);

/// 1-wave, terrain contact, 2-wave; the contact lands subcritically.
WaveStructure solve_type1(const RiemannProblem& p);

/// 1-wave, terrain contact landing exactly at Fr = 1, continuation 1-wave,
/// 2-wave.
WaveStructure solve_type2(const RiemannProblem& p);

/// 1-rarefaction down to the sonic point, terrain contact landing
/// supercritically, interposed 1-wave, 2-wave.
WaveStructure solve_type3(const RiemannProblem& p);

enum class TheoremCase { ConstantTerrain, A, B1, B2, C, D1, D2, Unclassified };
enum class Verdict { TypeI, TypeII, TypeIII, NoSolution };

const char* theorem_case_name(TheoremCase c);
const char* verdict_name(Verdict v);

/// Dam-break existence classification: the terrain-sign case, the h_R
/// thresholds at which solvability or the solving algorithm changes, and
/// the verdict for the problem's own h_R.
struct Classification {
  TheoremCase theorem_case = TheoremCase::Unclassified;
  std::vector<std::pair<std::string, double>> thresholds;
  std::optional<double> h_c;
  double h_sharp = 0.0;
  double h_max = 0.0;
  Verdict solvable = Verdict::NoSolution;
};

/// Requires u_L = u_R = 0 and h_L + z_L > h_R + z_R (NotDamBreak
/// otherwise). Cases outside the classification's preconditions are
/// reported Unclassified with the verdict determined empirically.
Classification classify_dambreak(const RiemannProblem& p);

struct NoSolutionReport {
  std::optional<Classification> classification;
  std::optional<std::pair<double, double>> gap;
  /// one (algorithm, reason) entry per failed construction attempt
  std::vector<std::pair<std::string, std::string>> failures;
};

using SolveResult = std::variant<WaveStructure, NoSolutionReport>;

/// Full dispatcher: constant-terrain constructor when the terrain is
/// continuous, otherwise algorithms I, II, III in order. Throws
/// SupercriticalData when a terrain jump is present and either initial
/// state is supercritical.
SolveResult solve(const RiemannProblem& p);

/// Post-hoc verification of a wave structure against the jump relations
/// and the speed-ordering admissibility rules.
struct StructureDiagnostics {
  double max_rh_residual;  ///< worst classical jump-relation residual
  double grh_mass;         ///< contact mass residual, normalized
  double grh_momentum;     ///< contact momentum residual, normalized
  double max_intersection_residual;
  bool speeds_ordered;
  bool contact_signs_ok;
  bool endpoints_match;
};

StructureDiagnostics verify_structure(const WaveStructure& ws,
                                      const RiemannProblem& p,
                                      int n_quad = 256);

}  // namespace swr

#endif
