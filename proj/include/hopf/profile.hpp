#pragma once

#include "hopf/integrate.hpp"

#include <vector>

namespace hopf {

// Raised when data fed to the geometry layer fails the soliton cross-check
// H = -u' (e.g. the totally geodesic branch, or corrupted samples).
class SolitonResidualError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One ambient sample of the profile curve gamma = (u, y, z) in the 2-sphere
// and the geometry of the rotational hypersurface it generates.
struct ProfileSample {
  double s = 0.0;
  double u = 0.0, v = 0.0;   // v = u'
  double g = 0.0;            // sqrt(1 - u^2 - v^2), >= 0
  double r = 0.0;            // u = cos r
  double theta_amb = 0.0;    // ambient angle of (y,z) in polar form
  double y = 0.0, z = 0.0;
  // Curvature scalars with respect to the normal field continued smoothly
  // through a glue point: lambda_tan = -g/u and lambda_prof = (u''+u)/g hold
  // literally on the s >= 0 half; on a mirrored half they continue oddly.
  double lambda_tan = 0.0;   // common principal curvature lambda_1..lambda_{2n-1}
  double lambda_prof = 0.0;  // lambda_{2n} (profile direction)
  double H = 0.0;            // scalar mean curvature, = -v on solitons
  double normA2 = 0.0;       // |A|^2
  double traceless2 = 0.0;   // |A|^2 - H^2/(2n)
  double drift_a = 0.0;      // <xi, e_s> = z y' - y z'
};

struct ProfileCurve {
  SolitonParams params;
  int theta_sign = +1;
  std::vector<ProfileSample> samples;  // ascending s
  bool uniform = false;                // uniform arclength grid
  double step = 0.0;                   // grid step when uniform

  std::size_t size() const { return samples.size(); }
};

// Geometry of a single phase sample. branch tells how to resolve the 0/0 in
// lambda_{2n} at g = 0: soliton profiles use the exact identity
// lambda_{2n} = -u' - (2n-1) lambda_1 (equal to (u''+u)/g with u'' from the
// vector field); the geodesic family is totally geodesic (0); `none` throws.
enum class CurvatureBranch { soliton, geodesic, none };

inline constexpr double kGMin = 1e-6;  // switch point for the g -> 0 fallback

std::array<double, 2> principal_curvatures(const SolitonParams& par,
                                           const TrajectorySample& smp,
                                           CurvatureBranch branch = CurvatureBranch::soliton);

// (H, |A|^2, |Aring|^2) from the principal curvatures; throws
// SolitonResidualError unless |H + v| < 1e-7.
std::array<double, 3> mean_and_norms(const SolitonParams& par,
                                     const TrajectorySample& smp,
                                     CurvatureBranch branch = CurvatureBranch::soliton);

// Unit normal coefficients (c_p, c_y, c_z): nu = (c_p * p; c_y, c_z).
std::array<double, 3> normal_vector(const ProfileSample& smp);

// Tangent components (y', z') of the profile curve, by chain rule from
// (r, theta_amb) and their rates; never finite differences.
std::array<double, 2> profile_tangent(const ProfileSample& smp, int theta_sign);

// Residual of the profile ODE with u'' taken from the vector field;
// identically ~0 on any phase data (it checks algebraic consistency and
// numeric health, not integration error).
double soliton_residual(const SolitonParams& par, const TrajectorySample& smp);

// Reconstructs the ambient curve from a phase trajectory. theta0 is the
// ambient angle at the first sample (0 by convention; the reflect-and-glue
// build uses pi/2 so that gamma'(0) = (0,1,0)).
ProfileCurve reconstruct_profile(const SolitonParams& par, const Trajectory& traj,
                                 int theta_sign = +1, double theta0 = 0.0);

// Constant curve at the equilibrium: the minimal Clifford torus.
// Uniform grid of `count` samples spaced by `step`.
ProfileCurve clifford_profile(const SolitonParams& par, double step,
                              std::size_t count, int theta_sign = +1);

// Extension across s = 0 by the rotation (y,z) -> (-y,-z), the reflection
// through the totally geodesic boundary sphere. This is the unique glue map
// that commutes with the ambient complex structure (so the mirrored half is
// again a soliton) and it equals the smooth ODE continuation through the
// glue. Parities: u, g, r, |A|^2 even; v, y, z, H, lambda_i, drift_a odd.
// The input must start at s = 0.
ProfileCurve double_profile(const ProfileCurve& half, std::size_t* glue_index = nullptr);

struct CompletenessReport {
  double inf_u = 0.0;
  double inf_u_s = 0.0;             // where the infimum is attained
  std::vector<double> warp_values;  // u along the curve
};

CompletenessReport metric_completeness_report(const ProfileCurve& curve);

// Invariant sweep used by tests and the CLI: max deviation of
//   |gamma|^2 = 1, |gamma'|^2 = 1 (4th-order FD on uniform grids),
//   H + v = 0, drift_a^2 + u^2 + H^2 = 1.
struct ProfileInvariants {
  double max_sphere_dev = 0.0;
  double max_speed_dev = 0.0;   // NaN-free only for uniform curves
  double max_h_cross = 0.0;
  double max_xitop_dev = 0.0;
};

ProfileInvariants profile_invariants(const ProfileCurve& curve);

}  // namespace hopf
