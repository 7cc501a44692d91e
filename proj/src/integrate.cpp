#include "hopf/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hopf {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::equilibrium_reached: return "equilibrium_reached";
    case Termination::horizon_reached: return "horizon_reached";
    case Termination::boundary_hit: return "boundary_hit";
    case Termination::step_failure: return "step_failure";
  }
  return "?";
}

const char* to_string(Direction d) {
  return d == Direction::forward ? "forward" : "backward";
}

void IntegratorConfig::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0) || !(h_init > 0) || !(h_min > 0) ||
      !(h_max > 0) || !(horizon > 0) || !(eq_radius > 0) || !(boundary_tol > 0))
    throw std::invalid_argument("IntegratorConfig: all fields must be positive");
  if (!(h_min <= h_init && h_init <= h_max))
    throw std::invalid_argument("IntegratorConfig: need h_min <= h_init <= h_max");
}

ExtState phase_rhs(int n, const ExtState& x) {
  const double m = 2.0 * n - 1.0;
  ExtState d;
  d.u = x.v;
  d.v = m * x.g * x.g / x.u - x.v * x.g - x.u;
  d.g = x.v * x.v - m * (x.v / x.u) * x.g;
  return d;
}

ExtState lift(const PhasePoint& p) {
  return {p.u, p.v, g_of(p)};
}

namespace {

// Dormand-Prince 5(4) coefficients (FSAL).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Arr3 {
  double x[3];
  double& operator[](int i) { return x[i]; }
  double operator[](int i) const { return x[i]; }
};

inline Arr3 to_arr(const ExtState& s) { return {{s.u, s.v, s.g}}; }
inline ExtState to_state(const Arr3& a) { return {a[0], a[1], a[2]}; }

struct Stepper {
  int n;
  double dir;  // +1 forward, -1 backward (d/dtau = dir * F)

  Arr3 eval(const Arr3& y) const {
    ExtState d = phase_rhs(n, to_state(y));
    return {{dir * d.u, dir * d.v, dir * d.g}};
  }

  // One embedded step of size h from (y, k1 = eval(y)). Returns the 5th-order
  // solution, the scaled error estimate and k7 (= eval(ynew), FSAL).
  void step(const Arr3& y, const Arr3& k1, double h, double abs_tol,
            double rel_tol, Arr3& ynew, double& err, Arr3& k7) const {
    Arr3 t, k2, k3, k4, k5, k6;
    for (int i = 0; i < 3; ++i) t[i] = y[i] + h * a21 * k1[i];
    k2 = eval(t);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = eval(t);
    for (int i = 0; i < 3; ++i)
      t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = eval(t);
    for (int i = 0; i < 3; ++i)
      t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = eval(t);
    for (int i = 0; i < 3; ++i)
      t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                         a65 * k5[i]);
    k6 = eval(t);
    for (int i = 0; i < 3; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    k7 = eval(ynew);
    err = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
      const double sc = abs_tol + rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
      const double q = ei / sc;
      err += q * q;
    }
    err = std::sqrt(err / 3.0);
  }
};

inline bool outside_domain(const Arr3& y) {
  return !(y[0] > 0.0) || y[0] * y[0] + y[1] * y[1] > 1.0 + kDomainTol;
}

struct HermiteSeg {
  // y(t) on [0,h] from endpoint values/slopes (slopes w.r.t. tau).
  Arr3 y0, y1, f0, f1;
  double h;
  Arr3 eval(double t) const {
    const double x = t / h;
    const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    const double h10 = t * (1 - x) * (1 - x);
    const double h01 = x * x * (3 - 2 * x);
    const double h11 = t * x * (x - 1);
    Arr3 r;
    for (int i = 0; i < 3; ++i)
      r[i] = h00 * y0[i] + h10 * f0[i] + h01 * y1[i] + h11 * f1[i];
    return r;
  }
};

struct RunOptions {
  bool stop_at_equilibrium = false;
  bool stop_at_boundary = false;  // g sign change / u floor
  double horizon_override = -1.0; // if > 0, replaces cfg.horizon
};

constexpr double kUFloor = 1e-9;

}  // namespace

double Trajectory::arclength_span() const {
  if (samples.empty()) return 0.0;
  return std::fabs(samples.back().s - samples.front().s);
}

TrajectorySample Trajectory::at_arclength(double s) const {
  if (samples.empty()) throw IntegrationError("empty trajectory");
  if (samples.size() == 1) return samples.front();
  const bool ascending = samples.back().s >= samples.front().s;
  // locate the knot interval containing s
  std::size_t lo = 0, hi = samples.size() - 1;
  auto before = [&](double a, double b) { return ascending ? a <= b : a >= b; };
  if (before(s, samples.front().s)) s = samples.front().s;
  if (before(samples.back().s, s)) s = samples.back().s;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (before(samples[mid].s, s)) lo = mid; else hi = mid;
  }
  const auto& A = samples[lo];
  const auto& B = samples[hi];
  const double h = B.s - A.s;
  if (h == 0.0) return A;
  HermiteSeg seg{{{A.u, A.v, A.g}}, {{B.u, B.v, B.g}},
                 {{slopes[lo].u, slopes[lo].v, slopes[lo].g}},
                 {{slopes[hi].u, slopes[hi].v, slopes[hi].g}}, h};
  const Arr3 y = seg.eval(s - A.s);
  return {s, y[0], y[1], y[2]};
}

namespace {

// Continuous angle fill; refines through dense output so that per-increment
// rotation stays well below pi. Used internally after integration.
std::vector<double> unwrap_internal(const SolitonParams& par, const Trajectory& traj) {
  const double un = equilibrium(par).point.u;
  const auto raw = [&](const TrajectorySample& smp, bool& degenerate) {
    const double du = smp.u - un;
    degenerate = std::hypot(du, smp.v) < kPolarTol;
    return degenerate ? 0.0 : std::atan2(smp.v, du);
  };
  std::vector<double> th(traj.samples.size(), 0.0);
  if (traj.samples.empty()) return th;
  bool deg = false;
  double prev_raw = raw(traj.samples[0], deg);
  th[0] = prev_raw;
  double acc = prev_raw;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    bool deg_i = false;
    const double ri = raw(traj.samples[i], deg_i);
    if (deg_i) { th[i] = acc; continue; }
    double d = std::remainder(ri - prev_raw, 2.0 * M_PI);
    if (std::fabs(d) > M_PI / 2) {
      // accumulate over dense-output subdivisions
      const double sa = traj.samples[i - 1].s, sb = traj.samples[i].s;
      const int pieces = 16;
      double r_prev = prev_raw, total = 0.0;
      for (int j = 1; j <= pieces; ++j) {
        const double s = sa + (sb - sa) * j / pieces;
        bool dgj = false;
        const double rj = raw(traj.at_arclength(s), dgj);
        if (dgj) continue;
        total += std::remainder(rj - r_prev, 2.0 * M_PI);
        r_prev = rj;
      }
      d = total;
    }
    acc += d;
    th[i] = acc;
    prev_raw = ri;
  }
  return th;
}

Trajectory run(const SolitonParams& par, const ExtState& x0, double s0,
               double dir_sign, const IntegratorConfig& cfg, const RunOptions& opt) {
  par.validate();
  cfg.validate();
  const EquilibriumInfo eq = equilibrium(par);
  const double horizon = opt.horizon_override > 0 ? opt.horizon_override : cfg.horizon;
  // cap the step so the spiral never rotates by more than ~pi/2 per step
  const double h_cap = std::min(cfg.h_max, 1.5 / eq.beta);

  Trajectory traj;
  traj.params = par;
  traj.direction = dir_sign > 0 ? Direction::forward : Direction::backward;

  Stepper st{par.n, dir_sign};
  Arr3 y = to_arr(x0);
  double tau = 0.0;

  auto push = [&](double tau_k, const Arr3& yk, const Arr3& fk) {
    traj.samples.push_back({s0 + dir_sign * tau_k, yk[0], yk[1], yk[2]});
    // slopes stored w.r.t. forward arclength
    traj.slopes.push_back({dir_sign * fk[0], dir_sign * fk[1], dir_sign * fk[2]});
  };

  Arr3 k1 = st.eval(y);
  push(0.0, y, k1);

  // equilibrium capture at entry
  if (opt.stop_at_equilibrium &&
      std::hypot(x0.u - eq.point.u, x0.v - eq.point.v) < cfg.eq_radius) {
    traj.termination = Termination::equilibrium_reached;
    traj.theta_unwrapped = unwrap_internal(par, traj);
    return traj;
  }

  double h = std::min(cfg.h_init, h_cap);
  double err_prev = 1.0;
  bool done = false;

  while (!done) {
    if (tau >= horizon - 1e-14) {
      traj.termination = Termination::horizon_reached;
      break;
    }
    h = std::min(h, horizon - tau);
    h = std::max(h, cfg.h_min);

    Arr3 ynew, k7;
    double err;
    st.step(y, k1, h, cfg.abs_tol, cfg.rel_tol, ynew, err, k7);

    const bool bad_domain = outside_domain(ynew) && !opt.stop_at_boundary;
    if ((err > 1.0 || bad_domain) && h > cfg.h_min * 2) {
      // reject
      double fac = bad_domain ? 0.5
                              : std::max(0.2, 0.9 * std::pow(err, -0.2));
      h = std::max(cfg.h_min, h * std::min(fac, 0.9));
      continue;
    }
    if (err > 1.0 && h <= cfg.h_min * 2) {
      traj.termination = Termination::step_failure;
      break;
    }

    const double tau_new = tau + h;
    HermiteSeg seg{y, ynew, k1, k7, h};

    // boundary events on the accepted interval
    if (opt.stop_at_boundary) {
      const bool g_cross = (y[2] > 0.0 && ynew[2] <= 0.0);
      const bool u_floor = (ynew[0] < kUFloor);
      if (g_cross || u_floor) {
        double lo = 0.0, hi = h;  // event in (lo, hi]
        auto event = [&](double t) {
          const Arr3 p = seg.eval(t);
          return g_cross ? p[2] : p[0] - kUFloor;
        };
        for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (event(mid) > 0.0) lo = mid; else hi = mid;
        }
        const double t_ev = hi;
        Arr3 yev = seg.eval(t_ev);
        if (g_cross) {
          // project onto the circle; localization error ~1e-12 anyway
          const double nrm = std::hypot(yev[0], yev[1]);
          yev[0] /= nrm;
          yev[1] /= nrm;
          yev[2] = 0.0;
        }
        push(tau + t_ev, yev, st.eval(yev));
        traj.boundary_point = PhasePoint{yev[0], yev[1]};
        traj.termination = Termination::boundary_hit;
        done = true;
        break;
      }
      if (outside_domain(ynew) && h > cfg.h_min * 2) {
        h = std::max(cfg.h_min, 0.5 * h);
        continue;
      }
    }
    if (done) break;

    // accept
    y = ynew;
    k1 = k7;
    tau = tau_new;
    push(tau, y, k1);

    if (opt.stop_at_equilibrium &&
        std::hypot(y[0] - eq.point.u, y[1] - eq.point.v) < cfg.eq_radius) {
      traj.termination = Termination::equilibrium_reached;
      break;
    }

    const double fac = std::clamp(
        0.9 * std::pow(std::max(err, 1e-10), -0.2) * std::pow(err_prev, 0.08), 0.1, 5.0);
    err_prev = std::max(err, 1e-10);
    h = std::clamp(h * fac, cfg.h_min, h_cap);
  }

  traj.geodesic_branch = is_geodesic_branch(par, traj.samples);

  // min forward-s zeta increment across consecutive samples
  double mz = 0.0;
  bool first = true;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const double z1 = zeta(par, traj.samples[i - 1].point());
    const double z2 = zeta(par, traj.samples[i].point());
    const double inc = (z2 - z1) * dir_sign;
    if (first || inc < mz) mz = inc;
    first = false;
  }
  traj.min_zeta_increment = first ? 0.0 : mz;

  traj.theta_unwrapped = unwrap_internal(par, traj);
  return traj;
}

}  // namespace

Trajectory integrate_forward_state(const SolitonParams& par, const ExtState& x0,
                                   const IntegratorConfig& cfg, double s0) {
  RunOptions opt;
  opt.stop_at_equilibrium = true;
  opt.stop_at_boundary = true;
  return run(par, x0, s0, +1.0, cfg, opt);
}

Trajectory integrate_forward(const SolitonParams& par, const PhasePoint& p0,
                             const IntegratorConfig& cfg, double s0) {
  if (!(p0.u > 0.0) || p0.u * p0.u + p0.v * p0.v > 1.0 + kDomainTol)
    throw DomainError("integrate_forward: start outside the closed domain");
  const EquilibriumInfo eq = equilibrium(par);
  const bool near_eq = std::hypot(p0.u - eq.point.u, p0.v - eq.point.v) < cfg.eq_radius;
  if (!near_eq && g_of(p0) <= cfg.boundary_tol)
    throw DomainError(
        "integrate_forward: start on the boundary circle; use boundary_start");
  return integrate_forward_state(par, lift(p0), cfg, s0);
}

Trajectory integrate_backward(const SolitonParams& par, const PhasePoint& p0,
                              const IntegratorConfig& cfg, double s0) {
  if (!(p0.u > 0.0) || p0.u * p0.u + p0.v * p0.v > 1.0 + kDomainTol)
    throw DomainError("integrate_backward: start outside the closed domain");
  const EquilibriumInfo eq = equilibrium(par);
  if (std::hypot(p0.u - eq.point.u, p0.v - eq.point.v) < kPolarTol)
    throw DomainError("integrate_backward: start at the equilibrium");
  if (g_of(p0) <= cfg.boundary_tol)
    throw DomainError("integrate_backward: start is not strictly interior");
  RunOptions opt;
  opt.stop_at_boundary = true;
  return run(par, lift(p0), s0, -1.0, cfg, opt);
}

bool is_geodesic_branch(const SolitonParams& par,
                        const std::vector<TrajectorySample>& samples) {
  if (samples.size() < 2) return false;
  const auto& first = samples.front();
  if (std::fabs(first.u * first.u + first.v * first.v - 1.0) > 10 * kDomainTol)
    return false;
  double sup_zeta = 0.0;
  for (const auto& smp : samples)
    sup_zeta = std::max(sup_zeta, zeta(par, smp.point()));
  const double span = std::fabs(samples.back().s - samples.front().s);
  return sup_zeta < 1e-12 && span > 1e-3;
}

Trajectory integrate_span(const SolitonParams& par, const ExtState& x0,
                          double s0, double s1, const IntegratorConfig& cfg) {
  RunOptions opt;
  opt.horizon_override = std::fabs(s1 - s0);
  return run(par, x0, s0, s1 >= s0 ? +1.0 : -1.0, cfg, opt);
}

Trajectory fixed_step_span(const SolitonParams& par, const ExtState& x0,
                           double s0, double h_signed, long nsteps) {
  par.validate();
  Trajectory traj;
  traj.params = par;
  traj.direction = h_signed >= 0 ? Direction::forward : Direction::backward;
  traj.termination = Termination::horizon_reached;
  Stepper st{par.n, h_signed >= 0 ? +1.0 : -1.0};
  const double h = std::fabs(h_signed);
  Arr3 y = to_arr(x0);
  Arr3 k1 = st.eval(y);
  traj.samples.reserve(nsteps + 1);
  traj.slopes.reserve(nsteps + 1);
  auto push = [&](long i, const Arr3& yk, const Arr3& fk) {
    traj.samples.push_back({s0 + h_signed * i, yk[0], yk[1], yk[2]});
    traj.slopes.push_back({st.dir * fk[0], st.dir * fk[1], st.dir * fk[2]});
  };
  push(0, y, k1);
  for (long i = 1; i <= nsteps; ++i) {
    Arr3 ynew, k7;
    double err;
    st.step(y, k1, h, 1.0, 1.0, ynew, err, k7);
    if (!(ynew[0] > 0.0))
      throw IntegrationError("fixed_step_span: left the domain (u <= 0)");
    y = ynew;
    k1 = k7;
    push(i, y, k1);
  }
  traj.theta_unwrapped = unwrap_internal(par, traj);
  return traj;
}

std::vector<double> unwrap_angle(const SolitonParams& par, const Trajectory& traj) {
  const double un = equilibrium(par).point.u;
  std::vector<double> th;
  th.reserve(traj.samples.size());
  double acc = 0.0, prev_raw = 0.0;
  bool have_prev = false;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& smp = traj.samples[i];
    const double du = smp.u - un;
    if (std::hypot(du, smp.v) < kPolarTol) {
      if (i + 1 != traj.samples.size() && i != 0)
        throw UnwrapError("unwrap_angle: interior sample at the equilibrium");
      th.push_back(have_prev ? acc : 0.0);
      continue;
    }
    const double r = std::atan2(smp.v, du);
    if (!have_prev) {
      acc = r;
      have_prev = true;
    } else {
      const double d = std::remainder(r - prev_raw, 2.0 * M_PI);
      if (std::fabs(d) >= M_PI * (1.0 - 1e-9))
        throw UnwrapError("unwrap_angle: consecutive samples differ by >= pi");
      acc += d;
    }
    prev_raw = r;
    th.push_back(acc);
  }
  return th;
}

ExtState circle_departure_series(int n, double s) {
  const double s2 = s * s;
  const double s4 = s2 * s2;
  const double s5 = s4 * s;
  const double s6 = s4 * s2;
  const double s7 = s6 * s;
  const double s8 = s4 * s4;
  const double c8 = (8.0 * n - 7.0) / 1260.0;
  ExtState x;
  x.u = std::cos(s) + s6 / 90.0 + c8 * s8;
  x.v = -std::sin(s) + s5 / 15.0 + 8.0 * c8 * s7;
  const double t = 1.0 - x.u * x.u - x.v * x.v;
  x.g = std::sqrt(std::max(0.0, t));
  return x;
}

BoundaryStart boundary_start(const SolitonParams& par, const PhasePoint& q,
                             BoundaryStartMethod method, const IntegratorConfig& cfg,
                             double s_handoff) {
  par.validate();
  cfg.validate();
  if (!(q.u > 0.0) || std::fabs(q.u * q.u + q.v * q.v - 1.0) > 1e-12)
    throw DomainError("boundary_start: q must lie on the unit circle with u > 0");
  if (!(s_handoff > 0.0))
    throw std::invalid_argument("boundary_start: s_handoff must be positive");

  BoundaryStart out;
  out.s_handoff = s_handoff;

  if (method == BoundaryStartMethod::series) {
    if (std::fabs(q.u - 1.0) > 1e-12 || std::fabs(q.v) > 1e-12)
      throw std::invalid_argument("boundary_start: series method requires q = (1,0)");
    out.state = circle_departure_series(par.n, s_handoff);
    return out;
  }

  // perturbation: retract radially and integrate to the common handoff. The
  // retracted state sits at g0 = sqrt(2 eps - eps^2), and the handoff states
  // expand in powers of sqrt(eps) (the circle is a square-root singularity of
  // the field), so the extrapolation runs a Richardson tableau in
  // h = sqrt(eps), ratio sqrt(2). Its j=2 column is the plain first-order-in-
  // eps step; the deeper columns are required for the expansion to settle.
  IntegratorConfig icfg = cfg;
  icfg.abs_tol = std::min(cfg.abs_tol, 1e-12);
  icfg.rel_tol = std::min(cfg.rel_tol, 1e-12);
  std::vector<std::array<double, 3>> tableau;
  for (int k = 0; k <= 6; ++k) {
    const double eps = std::ldexp(1e-3, -k);
    out.eps_used.push_back(eps);
    const double r = 1.0 - eps;
    ExtState x0{r * q.u, r * q.v, std::sqrt(std::max(0.0, 1.0 - r * r))};
    Trajectory t = integrate_span(par, x0, 0.0, s_handoff, icfg);
    if (t.termination != Termination::horizon_reached)
      throw IntegrationError("boundary_start: perturbation run ended early");
    const auto& e = t.samples.back();
    tableau.push_back({e.u, e.v, e.g});
  }
  const std::size_t K = tableau.size();
  bool converged = false;
  std::array<double, 3> result = tableau.back();
  std::vector<std::array<double, 3>> col = tableau, prev_col;
  for (std::size_t j = 1; j < K && !converged; ++j) {
    prev_col = col;
    const double denom = std::pow(2.0, 0.5 * static_cast<double>(j)) - 1.0;
    col.resize(K - j);
    for (std::size_t k = 0; k + j < K; ++k)
      for (int c = 0; c < 3; ++c)
        col[k][c] = prev_col[k + 1][c] +
                    (prev_col[k + 1][c] - prev_col[k][c]) / denom;
    double d = 0.0;
    for (int c = 0; c < 3; ++c)
      d = std::max(d, std::fabs(col.back()[c] - prev_col.back()[c]));
    out.extrapolant_diffs.push_back(d);
    result = col.back();
    if (d < 1e-8) converged = true;
  }
  out.converged = converged;
  if (!converged) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "boundary_start: extrapolation did not settle below 1e-8 "
                  "(last diff %.3e, eps down to %.3e)",
                  out.extrapolant_diffs.empty() ? -1.0 : out.extrapolant_diffs.back(),
                  out.eps_used.back());
    throw ConvergenceError(buf);
  }
  out.state = {result[0], result[1], result[2]};
  if (!(out.state.g > 0.0))
    throw IntegrationError("boundary_start: extrapolated state is not interior");
  return out;
}

}  // namespace hopf
