#include "swr/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace swr {

namespace {

// Interior of a rarefaction fan at similarity coordinate xi. The invariant
// through the upstream edge and the characteristic condition give h and u
// in closed form.
HydraulicState fan_state(const ElementaryWave& w, double xi, double g) {
  if (w.kind == WaveKind::Rarefaction1) {
    const double j = w.upstream.u + 2.0 * std::sqrt(g * w.upstream.h);
    const double c = (j - xi) / 3.0;
    return {c * c / g, xi + c};
  }
  const double j = w.upstream.u - 2.0 * std::sqrt(g * w.upstream.h);
  const double c = (xi - j) / 3.0;
  return {c * c / g, xi - c};
}

}  // namespace

SamplePoint sample_at(const WaveStructure& ws, const TerrainSide& tl,
                      const TerrainSide& tr, double g, double x, double t) {
  if (!(t > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "sample time t must be > 0");
  }
  const double xi = x / t;
  HydraulicState s = ws.states.front();
  bool found = false;
  for (std::size_t i = 0; i < ws.waves.size(); ++i) {
    const auto& w = ws.waves[i];
    if (xi < w.s_head) {
      s = ws.states[i];
      found = true;
      break;
    }
    if (xi <= w.s_tail) {
      // on a shock or the contact the right-limit value is returned
      if (w.kind == WaveKind::Rarefaction1 || w.kind == WaveKind::Rarefaction2) {
        s = fan_state(w, xi, g);
      } else {
        s = w.downstream;
      }
      found = true;
      break;
    }
  }
  if (!found) s = ws.states.back();
  const TerrainSide& terr = x < 0.0 ? tl : tr;
  return {s.h, s.u, terr.z, terr.theta, froude_squared(s, g)};
}

std::vector<ProfileRow> profile(const ProfileRequest& req) {
  if (!(req.t > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "profile time t must be > 0");
  }
  if (!std::is_sorted(req.x_grid.begin(), req.x_grid.end())) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "profile x_grid must be ascending");
  }
  for (double x : req.x_grid) {
    if (!std::isfinite(x)) {
      throw SolverError(ErrorCode::InvalidArgument,
                        "profile x_grid must be finite");
    }
  }
  std::vector<ProfileRow> rows;
  rows.reserve(req.x_grid.size());
  for (double x : req.x_grid) {
    const SamplePoint s = sample_at(req.structure, req.terrain_left,
                                    req.terrain_right, req.g, x, req.t);
    rows.push_back({x, s.h, s.u, s.z + s.h, s.fr2});
  }
  return rows;
}

}  // namespace swr
