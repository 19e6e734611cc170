#include "swr/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace swr {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveHeight: return "NonPositiveHeight";
    case ErrorCode::PorosityOutOfRange: return "PorosityOutOfRange";
    case ErrorCode::NonPositiveGravity: return "NonPositiveGravity";
    case ErrorCode::NotShockBranch: return "NotShockBranch";
    case ErrorCode::SupercriticalAnchor: return "SupercriticalAnchor";
    case ErrorCode::NonPositiveTheta: return "NonPositiveTheta";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::NoTerrainSolution: return "NoTerrainSolution";
    case ErrorCode::NoWetIntersection: return "NoWetIntersection";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::NoSonicLanding: return "NoSonicLanding";
    case ErrorCode::NegativeInterposedShockSpeed:
      return "NegativeInterposedShockSpeed";
    case ErrorCode::NeverSolvable: return "NeverSolvable";
    case ErrorCode::SupercriticalData: return "SupercriticalData";
    case ErrorCode::NotDamBreak: return "NotDamBreak";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

const char* wave_kind_name(WaveKind kind) {
  switch (kind) {
    case WaveKind::Rarefaction1: return "Rarefaction1";
    case WaveKind::Shock1: return "Shock1";
    case WaveKind::TerrainContact: return "TerrainContact";
    case WaveKind::Rarefaction2: return "Rarefaction2";
    case WaveKind::Shock2: return "Shock2";
  }
  return "Unknown";
}

const char* type_label_name(TypeLabel label) {
  switch (label) {
    case TypeLabel::ConstantTerrain: return "ConstantTerrain";
    case TypeLabel::TypeI: return "TypeI";
    case TypeLabel::TypeII: return "TypeII";
    case TypeLabel::TypeIII: return "TypeIII";
  }
  return "Unknown";
}

namespace {

void check_state(const HydraulicState& s, const char* side) {
  if (!(s.h > kDryHeight) || !std::isfinite(s.h)) {
    std::ostringstream msg;
    msg << side << ".h must be > " << kDryHeight
        << " m (dry states are rejected); got " << s.h;
    throw SolverError(ErrorCode::NonPositiveHeight, msg.str());
  }
  if (!std::isfinite(s.u)) {
    std::ostringstream msg;
    msg << side << ".u must be finite";
    throw SolverError(ErrorCode::InvalidArgument, msg.str());
  }
}

void check_terrain(const TerrainSide& t, const char* side,
                   const ValidationOptions& opts) {
  const double upper = opts.allow_porosity_above_one
                           ? std::numeric_limits<double>::infinity()
                           : 1.0;
  if (!(t.theta > 0.0) || t.theta > upper || !std::isfinite(t.theta)) {
    std::ostringstream msg;
    msg << side << ".theta must lie in (0, "
        << (opts.allow_porosity_above_one ? "inf" : "1") << "]; got "
        << t.theta;
    throw SolverError(ErrorCode::PorosityOutOfRange, msg.str());
  }
  if (!std::isfinite(t.z)) {
    std::ostringstream msg;
    msg << side << ".z must be finite";
    throw SolverError(ErrorCode::InvalidArgument, msg.str());
  }
}

}  // namespace

RiemannProblem validate_problem(const RiemannProblem& p,
                                const ValidationOptions& opts) {
  if (!(p.g > 0.0) || !std::isfinite(p.g)) {
    std::ostringstream msg;
    msg << "g must be > 0; got " << p.g;
    throw SolverError(ErrorCode::NonPositiveGravity, msg.str());
  }
  check_state(p.left, "left");
  check_state(p.right, "right");
  check_terrain(p.terrain_left, "left", opts);
  check_terrain(p.terrain_right, "right", opts);
  return p;
}

double froude_squared(const HydraulicState& s, double g) {
  return s.u * s.u / (g * s.h);
}

double froude_signed(const HydraulicState& s, double g) {
  return s.u / std::sqrt(g * s.h);
}

}  // namespace swr
