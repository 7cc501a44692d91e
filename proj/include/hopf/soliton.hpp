#pragma once

#include "hopf/profile.hpp"

namespace hopf {

struct SolitonDiagnostics {
  double clifford_s_star = 0.0;     // convergence onset (forward end)
  int sign_changes = 0;             // H sign changes on [0, min(S, 200)]
  double winding = 0.0;             // total winding of the forward spiral
  double symmetry_defect = 0.0;     // of the constructed doubling (exact 0)
  double reintegration_defect = 0.0;  // independent backward re-derivation
  double glue_return_dist = 0.0;      // backward boundary hit vs (1,0)
  double sup_normA2 = 0.0;
  double sup_normA2_s = 0.0;
  double glue_curvature_norm = 0.0;  // |A| at s = 0
  double terminal_u = 0.0;           // u at the positive end
  double limit_radius_fiber = 0.0;   // terminal u  -> sqrt((2n-1)/2n)
  double limit_radius_circle = 0.0;  // terminal sqrt(1-u^2) -> sqrt(1/2n)
  double half_range = 0.0;           // S: profile covers [-S, S]
};

struct SolitonSurface {
  SolitonParams params;
  ProfileCurve profile;  // doubled, uniform grid over [-S, S]
  std::size_t glue_index = 0;
  SolitonDiagnostics diagnostics;
};

struct BuildConfig {
  IntegratorConfig integ;
  double s_handoff = kDefaultHandoff;  // series handoff; grid-aligned to h_out
  double h_out = 5e-4;                 // uniform output step
  double clifford_tol = 1e-4;          // diagnostic convergence tolerance
  int theta_sign = +1;
  double s_max = 0.0;                  // > 0 caps the half-range S
};

// Boundary start at (1,0), forward integration to the Clifford limit,
// reconstruction with gamma(0) = (1,0,0), gamma'(0) = (0,1,0), and mirror
// doubling across the glue equator.
SolitonSurface build_glued_soliton(const SolitonParams& par, const BuildConfig& cfg);

// Full trajectory of the interior branch through a circle point q: the point
// itself at s = 0, series knots on (0, handoff] when q = (1,0), then the
// adaptive forward run.
Trajectory boundary_branch_trajectory(const SolitonParams& par, const PhasePoint& q,
                                      BoundaryStartMethod method,
                                      const IntegratorConfig& cfg,
                                      double s_handoff = kDefaultHandoff);

// Smallest sampled s* such that |(u,v) - p_n| < tol from s* on; also the
// terminal ambient radii can be read off the last sample. Throws
// IntegrationError when the tolerance is never met.
double detect_clifford_convergence(const Trajectory& traj, double tol);

// Strict sign changes of v (= -H) with dead band 1e-10.
int count_sign_changes(const std::vector<TrajectorySample>& samples,
                       double s_lo, double s_hi);
int count_sign_changes_H(const ProfileCurve& curve, double s_lo, double s_hi);

// Supremum of |A|^2 over the samples and its location.
std::array<double, 2> sup_normA2(const ProfileCurve& curve);

// Half-profile on the uniform grid {0, h, 2h, ..., S}: fixed-step integration
// from the series handoff backward to 0 and forward to S. S is rounded to the
// grid. Used for identity verification and table output.
ProfileCurve uniform_glued_half_profile(const SolitonParams& par, const BuildConfig& cfg,
                                        double S);

// Uniform-grid profile from an arbitrary interior state (generic starts).
ProfileCurve uniform_profile_from_state(const SolitonParams& par, const ExtState& x0,
                                        double s0, double h, long nsteps,
                                        int theta_sign, double theta0 = 0.0);

}  // namespace hopf
