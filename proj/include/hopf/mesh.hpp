#pragma once

#include "hopf/io.hpp"

#include <array>

namespace hopf {

// Mesh export of the n=1 surface f(alpha, s) = (u cos a, u sin a, y, z) in
// the 3-sphere, stereographically projected from `pole`.
struct MeshExportConfig {
  int alpha_resolution = 64;              // samples of the circle fiber
  int s_stride = 16;                      // take every s_stride-th profile row
  std::array<double, 4> pole = {0, 0, 0, 1};
  double min_pole_distance = 0.05;
  void validate() const;
};

class MeshError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes a Wavefront OBJ (v/f lines, quad faces, closed in alpha). Verifies
// |f| = 1 to 1e-8 pre-projection and the pole clearance; throws MeshError on
// violation (message carries the offending sample).
void export_mesh_obj(const ProfileCurve& curve, const MeshExportConfig& cfg,
                     const std::filesystem::path& path);

}  // namespace hopf
