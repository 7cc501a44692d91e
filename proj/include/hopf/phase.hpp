#pragma once

#include <array>
#include <complex>
#include <stdexcept>

namespace hopf {

// Dimension parameter: the hypersurface has dimension 2n, the ambient round
// sphere dimension 2n+1.
struct SolitonParams {
  int n = 1;
  void validate() const {
    if (n < 1) throw std::invalid_argument("SolitonParams: n must be >= 1");
  }
};

// Point of the phase domain {u > 0, u^2 + v^2 <= 1}, with v = u' (arclength
// derivative of the profile height u).
struct PhasePoint {
  double u = 0.0;
  double v = 0.0;
};

inline constexpr double kDomainTol = 1e-9;   // slack on u^2 + v^2 <= 1
inline constexpr double kPolarTol = 1e-12;   // degenerate radius threshold

class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

struct EquilibriumInfo {
  PhasePoint point;                              // (sqrt(1 - 1/2n), 0)
  std::array<std::array<double, 2>, 2> jacobian; // [[0,1],[-4n,-1/sqrt(2n)]]
  std::complex<double> eigenvalue_plus;          // alpha + i*beta
  std::complex<double> eigenvalue_minus;         // alpha - i*beta
  double alpha = 0.0;                            // real part, negative
  double beta = 0.0;                             // imaginary part, positive
};

// x^k for small non-negative integer k.
double ipow(double x, int k);

// g = sqrt(max(0, 1 - u^2 - v^2)). When 1 - u^2 - v^2 < -kDomainTol the
// point lies outside the closed domain; *below_domain is set (no throw).
double g_of(const PhasePoint& p, bool* below_domain = nullptr);

// Monotone quantity zeta = u^(2n-1) * g. Nondecreasing along solutions.
double zeta(const SolitonParams& par, const PhasePoint& p);

// Right-hand side (P, Q) of the phase system:
//   u' = v,  v' = (2n-1)(1-u^2-v^2)/u - v*g - u.
// Throws DomainError off the closed domain.
std::array<double, 2> vector_field(const SolitonParams& par, const PhasePoint& p);

// Closed-form directional derivative of zeta along (P,Q); requires g > 0.
// Identically u^(2n-1) v^2 on the domain interior.
double zeta_flow_derivative(const SolitonParams& par, const PhasePoint& p);

EquilibriumInfo equilibrium(const SolitonParams& par);

// d(theta)/ds for the polar angle theta = atan2(v, u - u_n) centered at the
// equilibrium. Throws DomainError when the point is within kPolarTol of it.
double polar_angle_rate(const SolitonParams& par, const PhasePoint& p);

// Radii (sqrt((2n-1)/2n), sqrt(1/2n)) of the minimal Clifford torus
// corresponding to the constant solution; the first equals u_n.
std::array<double, 2> clifford_radii(const SolitonParams& par);

}  // namespace hopf
