#pragma once

#include "hopf/phase.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hopf {

enum class Direction { forward, backward };

enum class Termination {
  equilibrium_reached,
  horizon_reached,
  boundary_hit,
  step_failure,
};

const char* to_string(Termination t);
const char* to_string(Direction d);

class IntegrationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class UnwrapError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Extrapolation toward the boundary circle failed to settle.
class ConvergenceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integration state (u, v, g). Carrying g = sqrt(1-u^2-v^2) as a state
// variable with g' = v^2 - (2n-1)(v/u) g makes the system smooth up to and
// across the circle {g = 0}; g^2 + u^2 + v^2 = 1 is an exact first integral.
struct ExtState {
  double u = 0.0, v = 0.0, g = 0.0;
};

ExtState phase_rhs(int n, const ExtState& x);

// Extended state from a phase point, g from the constraint (clamped).
ExtState lift(const PhasePoint& p);

struct IntegratorConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double h_init = 1e-4;
  double h_min = 1e-13;
  double h_max = 0.25;
  double horizon = 500.0;    // max |s - s0|
  double eq_radius = 1e-8;   // equilibrium capture radius (forward)
  double boundary_tol = 1e-9;
  void validate() const;
};

inline constexpr double kZetaTol = 1e-8;  // tolerated zeta decrease per step

struct TrajectorySample {
  double s = 0.0;
  double u = 0.0, v = 0.0, g = 0.0;
  PhasePoint point() const { return {u, v}; }
};

struct Trajectory {
  SolitonParams params;
  Direction direction = Direction::forward;
  Termination termination = Termination::step_failure;
  std::vector<TrajectorySample> samples;   // in integration order
  std::vector<ExtState> slopes;            // d/ds at samples (forward s)
  std::vector<double> theta_unwrapped;     // aligned with samples
  std::optional<PhasePoint> boundary_point;  // set iff boundary_hit
  bool geodesic_branch = false;  // start on the circle stayed on it (zeta == 0)
  double min_zeta_increment = 0.0;  // min of forward-s zeta increments

  // Cubic Hermite dense output between stored knots.
  TrajectorySample at_arclength(double s) const;
  double s_begin() const { return samples.front().s; }
  double s_end() const { return samples.back().s; }
  double arclength_span() const;
};

// Forward integration from an interior point (or a handoff state): runs until
// the equilibrium capture radius, the horizon, or a boundary event.
Trajectory integrate_forward(const SolitonParams& par, const PhasePoint& p0,
                             const IntegratorConfig& cfg, double s0 = 0.0);
Trajectory integrate_forward_state(const SolitonParams& par, const ExtState& x0,
                                   const IntegratorConfig& cfg, double s0 = 0.0);

// Backward integration; terminates with boundary_hit at a localized point of
// the unit circle (horizon_reached is an anomaly for backward runs).
Trajectory integrate_backward(const SolitonParams& par, const PhasePoint& p0,
                              const IntegratorConfig& cfg, double s0 = 0.0);

// Event-free integration of the extended system from s0 to s1 (either
// direction); used for re-derivations that cross the glue point.
Trajectory integrate_span(const SolitonParams& par, const ExtState& x0,
                          double s0, double s1, const IntegratorConfig& cfg);

// Fixed-step pass (no error control): nsteps steps of size h_signed from
// (s0, x0); sample i sits at s0 + i*h_signed. Order-5 single steps.
Trajectory fixed_step_span(const SolitonParams& par, const ExtState& x0,
                           double s0, double h_signed, long nsteps);

// Continuous polar angle along the samples; consecutive raw angles must
// differ by less than pi or an UnwrapError is thrown.
std::vector<double> unwrap_angle(const SolitonParams& par, const Trajectory& traj);

// True when samples that start on the boundary circle never leave it
// (sup zeta < 1e-12): the totally geodesic family u = cos(s + s0), not a
// soliton branch. Such data must be rejected by profile reconstruction.
bool is_geodesic_branch(const SolitonParams& par,
                        const std::vector<TrajectorySample>& samples);

// Departure series from the circle point (1,0):
//   u = cos s + s^6/90 + (8n-7) s^8/1260,  v = u',  g from the constraint.
// Residual of the profile ODE decays like s^8 (odd coefficients vanish).
ExtState circle_departure_series(int n, double s);

enum class BoundaryStartMethod { series, perturbation };

struct BoundaryStart {
  double s_handoff = 0.0;
  ExtState state;                      // strictly interior: g > 0
  // perturbation diagnostics (empty for the series method)
  std::vector<double> eps_used;
  std::vector<double> extrapolant_diffs;
  bool converged = true;
};

inline constexpr double kDefaultHandoff = 0.05;

// Interior branch through a circle point q (u_q > 0, u_q^2 + v_q^2 = 1).
// series: only for q = (1,0). perturbation: integrates from (1-eps_k) q,
// eps_k = 2^-k * 1e-3, k = 0..6, and Richardson-extrapolates (first order)
// the states at s_handoff; converged when successive extrapolants differ by
// < 1e-8 in sup norm.
BoundaryStart boundary_start(const SolitonParams& par, const PhasePoint& q,
                             BoundaryStartMethod method, const IntegratorConfig& cfg,
                             double s_handoff = kDefaultHandoff);

}  // namespace hopf
