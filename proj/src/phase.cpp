#include "hopf/phase.hpp"

#include <cmath>

namespace hopf {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double g_of(const PhasePoint& p, bool* below_domain) {
  const double t = 1.0 - p.u * p.u - p.v * p.v;
  if (below_domain) *below_domain = (t < -kDomainTol);
  return std::sqrt(std::max(0.0, t));
}

double zeta(const SolitonParams& par, const PhasePoint& p) {
  par.validate();
  return ipow(p.u, 2 * par.n - 1) * g_of(p);
}

static void require_in_domain(const PhasePoint& p) {
  if (!(p.u > 0.0))
    throw DomainError("phase point has u <= 0");
  if (p.u * p.u + p.v * p.v > 1.0 + kDomainTol)
    throw DomainError("phase point outside the unit disc");
}

std::array<double, 2> vector_field(const SolitonParams& par, const PhasePoint& p) {
  par.validate();
  require_in_domain(p);
  const double t = std::max(0.0, 1.0 - p.u * p.u - p.v * p.v);  // = g^2
  const double g = std::sqrt(t);
  const double Q = (2.0 * par.n - 1.0) * t / p.u - p.v * g - p.u;
  return {p.v, Q};
}

double zeta_flow_derivative(const SolitonParams& par, const PhasePoint& p) {
  par.validate();
  require_in_domain(p);
  const double g = g_of(p);
  if (g <= 0.0) throw DomainError("zeta_flow_derivative needs an interior point");
  const int m = 2 * par.n - 1;
  const auto F = vector_field(par, p);
  // d(zeta) . F with d(zeta) = ((2n-1)u^(2n-2) g - u^(2n-1) u/g, -u^(2n-1) v/g)
  return m * ipow(p.u, m - 1) * g * F[0] -
         ipow(p.u, m) * (p.u * F[0] + p.v * F[1]) / g;
}

EquilibriumInfo equilibrium(const SolitonParams& par) {
  par.validate();
  const double n = par.n;
  EquilibriumInfo info;
  info.point = {std::sqrt((2.0 * n - 1.0) / (2.0 * n)), 0.0};
  info.jacobian = {{{0.0, 1.0}, {-4.0 * n, -1.0 / std::sqrt(2.0 * n)}}};
  info.alpha = -1.0 / (2.0 * std::sqrt(2.0 * n));
  info.beta = std::sqrt(32.0 * n * n - 1.0) / (2.0 * std::sqrt(2.0 * n));
  info.eigenvalue_plus = {info.alpha, info.beta};
  info.eigenvalue_minus = {info.alpha, -info.beta};
  return info;
}

double polar_angle_rate(const SolitonParams& par, const PhasePoint& p) {
  par.validate();
  require_in_domain(p);
  const double un = equilibrium(par).point.u;
  const double du = p.u - un;
  const double r = std::hypot(du, p.v);
  if (r < kPolarTol) throw DomainError("polar_angle_rate: point at the equilibrium");
  const double cos_th = du / r;
  const double sin_th = p.v / r;
  const double t = std::max(0.0, 1.0 - p.u * p.u - p.v * p.v);
  const double g = std::sqrt(t);
  return -1.0 + (2.0 * par.n - 1.0) * (t / p.u) * (cos_th / r) -
         g * sin_th * cos_th - un * cos_th / r;
}

std::array<double, 2> clifford_radii(const SolitonParams& par) {
  par.validate();
  const double n = par.n;
  return {std::sqrt((2.0 * n - 1.0) / (2.0 * n)), std::sqrt(1.0 / (2.0 * n))};
}

}  // namespace hopf
