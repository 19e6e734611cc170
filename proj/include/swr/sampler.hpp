#ifndef SWR_SAMPLER_HPP
#define SWR_SAMPLER_HPP

#include <vector>

#include "swr/core.hpp"

namespace swr {

struct SamplePoint {
  double h;
  double u;
  double z;
  double theta;
  double fr2;
};

/// Evaluates the self-similar solution at (x, t), t > 0. Rarefaction
/// interiors come from the closed-form invariant/characteristic pair; at a
/// sampled point exactly on a shock or on the contact the right-limit
/// (downstream) value is returned. Terrain switches sides at x = 0.
SamplePoint sample_at(const WaveStructure& ws, const TerrainSide& terrain_left,
                      const TerrainSide& terrain_right, double g, double x,
                      double t);

struct ProfileRequest {
  WaveStructure structure;
  TerrainSide terrain_left;
  TerrainSide terrain_right;
  double g = 9.81;
  double t = 1.0;
  std::vector<double> x_grid;  ///< finite, ascending
};

struct ProfileRow {
  double x;
  double h;
  double u;
  double surface;  ///< z + h
  double fr2;
};

std::vector<ProfileRow> profile(const ProfileRequest& req);

}  // namespace swr

#endif
