#include "hopf/profile.hpp"

#include <algorithm>
#include <cmath>

namespace hopf {

namespace {

constexpr double kGluePad = 1e-14;  // u >= 1 - kGluePad counts as the glue point

// theta' = theta_sign * g / (1 - u^2); bounded on soliton branches, 0 at the
// glue where g vanishes one order faster than 1 - u^2.
double theta_rate(double u, double g, int theta_sign) {
  const double one_minus_u2 = (1.0 - u) * (1.0 + u);
  if (one_minus_u2 < kGluePad) return 0.0;
  return theta_sign * g / one_minus_u2;
}

double r_rate(double u, double v) {
  const double s = (1.0 - u) * (1.0 + u);
  if (s < kGluePad) return 1.0;  // glue limit, sign of the s>0 side
  return -v / std::sqrt(s);
}

}  // namespace

std::array<double, 2> principal_curvatures(const SolitonParams& par,
                                           const TrajectorySample& smp,
                                           CurvatureBranch branch) {
  par.validate();
  if (!(smp.u > 0.0)) throw DomainError("principal_curvatures: u <= 0");
  const double g = std::max(0.0, smp.g);
  const double m = 2.0 * par.n - 1.0;
  const double lam_tan = -g / smp.u;
  double lam_prof = 0.0;
  if (g >= kGMin) {
    // (u'' + u)/g with u'' = Q(u,v): the g factor cancels exactly.
    lam_prof = m * g / smp.u - smp.v;
  } else {
    switch (branch) {
      case CurvatureBranch::soliton:
        lam_prof = -smp.v - m * lam_tan;  // exact on soliton profiles
        break;
      case CurvatureBranch::geodesic:
        lam_prof = 0.0;  // totally geodesic family
        break;
      case CurvatureBranch::none:
        throw DomainError("principal_curvatures: g = 0 with the fallback disabled");
    }
  }
  return {lam_tan, lam_prof};
}

std::array<double, 3> mean_and_norms(const SolitonParams& par,
                                     const TrajectorySample& smp,
                                     CurvatureBranch branch) {
  const auto lam = principal_curvatures(par, smp, branch);
  const double m = 2.0 * par.n - 1.0;
  const double H = m * lam[0] + lam[1];
  const double normA2 = m * lam[0] * lam[0] + lam[1] * lam[1];
  const double traceless2 = normA2 - H * H / (2.0 * par.n);
  if (std::fabs(H + smp.v) > 1e-7)
    throw SolitonResidualError("mean_and_norms: H != -u', input is not a soliton profile");
  return {H, normA2, traceless2};
}

std::array<double, 2> profile_tangent(const ProfileSample& smp, int theta_sign) {
  const double rp = r_rate(smp.u, smp.v);
  const double tp = theta_rate(smp.u, smp.g, theta_sign);
  const double sr = std::sin(smp.r), cr = std::cos(smp.r);
  const double st = std::sin(smp.theta_amb), ct = std::cos(smp.theta_amb);
  return {rp * cr * st + tp * sr * ct, rp * cr * ct - tp * sr * st};
}

std::array<double, 3> normal_vector(const ProfileSample& smp) {
  // theta_sign is implicit in the sample: drift_a = theta_sign * g.
  int ts = +1;
  if (smp.g > 1e-12) ts = smp.drift_a >= 0 ? +1 : -1;
  const auto yz = profile_tangent(smp, ts);
  const double yp = yz[0], zp = yz[1];
  return {yp * smp.z - smp.y * zp, smp.u * zp - smp.v * smp.z,
          smp.v * smp.y - smp.u * yp};
}

double soliton_residual(const SolitonParams& par, const TrajectorySample& smp) {
  par.validate();
  const double m = 2.0 * par.n - 1.0;
  const double g = std::max(0.0, smp.g);
  const double upp = m * g * g / smp.u - smp.v * g - smp.u;  // u'' from the field
  return smp.u * upp + m * smp.v * smp.v + 2.0 * par.n * smp.u * smp.u - m +
         smp.u * smp.v * g;
}

ProfileCurve reconstruct_profile(const SolitonParams& par, const Trajectory& traj,
                                 int theta_sign, double theta0) {
  par.validate();
  if (theta_sign != 1 && theta_sign != -1)
    throw std::invalid_argument("reconstruct_profile: theta_sign must be +-1");
  if (traj.samples.empty())
    throw std::invalid_argument("reconstruct_profile: empty trajectory");

  // ascending-s ordering
  std::vector<std::size_t> order(traj.samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (traj.samples.size() > 1 && traj.samples.back().s < traj.samples.front().s)
    std::reverse(order.begin(), order.end());

  const CurvatureBranch branch =
      traj.geodesic_branch ? CurvatureBranch::geodesic : CurvatureBranch::soliton;

  ProfileCurve curve;
  curve.params = par;
  curve.theta_sign = theta_sign;
  curve.samples.resize(order.size());

  // interior samples must have u < 1 (only the first may sit at the glue)
  for (std::size_t k = 1; k < order.size(); ++k)
    if (traj.samples[order[k]].u >= 1.0)
      throw DomainError("reconstruct_profile: interior sample with u >= 1");

  // cumulative ambient angle: per-interval Simpson with dense-output midpoints
  auto integrand = [&](const TrajectorySample& smp) {
    return theta_rate(smp.u, std::max(0.0, smp.g), theta_sign);
  };
  std::vector<double> theta(order.size(), theta0);
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto& A = traj.samples[order[k - 1]];
    const auto& B = traj.samples[order[k]];
    const double h = B.s - A.s;
    const auto M = traj.at_arclength(0.5 * (A.s + B.s));
    theta[k] = theta[k - 1] +
               h / 6.0 * (integrand(A) + 4.0 * integrand(M) + integrand(B));
  }

  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& ts = traj.samples[order[k]];
    ProfileSample& p = curve.samples[k];
    p.s = ts.s;
    p.u = ts.u;
    p.v = ts.v;
    p.g = std::max(0.0, ts.g);
    p.r = std::acos(std::clamp(ts.u, -1.0, 1.0));
    p.theta_amb = theta[k];
    const double sr = std::sin(p.r);
    p.y = sr * std::sin(p.theta_amb);
    p.z = sr * std::cos(p.theta_amb);
    const auto lam = principal_curvatures(par, ts, branch);
    p.lambda_tan = lam[0];
    p.lambda_prof = lam[1];
    const auto hn = mean_and_norms(par, ts, branch);
    p.H = hn[0];
    p.normA2 = hn[1];
    p.traceless2 = hn[2];
    const auto yz = profile_tangent(p, theta_sign);
    p.drift_a = p.z * yz[0] - p.y * yz[1];
  }
  return curve;
}

ProfileCurve clifford_profile(const SolitonParams& par, double step,
                              std::size_t count, int theta_sign) {
  par.validate();
  if (count < 2 || !(step > 0))
    throw std::invalid_argument("clifford_profile: need count >= 2, step > 0");
  const auto radii = clifford_radii(par);
  const double un = radii[0], gn = radii[1];
  const double m = 2.0 * par.n - 1.0;
  const double lam_tan = -1.0 / std::sqrt(m);
  const double lam_prof = std::sqrt(m);
  const double rate = theta_sign * std::sqrt(2.0 * par.n);  // theta' = 1/gn

  ProfileCurve curve;
  curve.params = par;
  curve.theta_sign = theta_sign;
  curve.uniform = true;
  curve.step = step;
  curve.samples.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    ProfileSample& p = curve.samples[k];
    p.s = step * static_cast<double>(k);
    p.u = un;
    p.v = 0.0;
    p.g = gn;
    p.r = std::acos(un);
    p.theta_amb = rate * p.s;
    p.y = gn * std::sin(p.theta_amb);
    p.z = gn * std::cos(p.theta_amb);
    p.lambda_tan = lam_tan;
    p.lambda_prof = lam_prof;
    p.H = 0.0;
    p.normA2 = 2.0 * par.n;
    p.traceless2 = 2.0 * par.n;
    p.drift_a = theta_sign * gn;
  }
  return curve;
}

ProfileCurve double_profile(const ProfileCurve& half, std::size_t* glue_index) {
  if (half.samples.empty())
    throw std::invalid_argument("double_profile: empty curve");
  if (std::fabs(half.samples.front().s) > 1e-12)
    throw std::invalid_argument("double_profile: curve must start at s = 0");
  ProfileCurve out;
  out.params = half.params;
  out.theta_sign = half.theta_sign;
  out.uniform = half.uniform;
  out.step = half.step;
  const std::size_t m = half.samples.size();
  out.samples.resize(2 * m - 1);
  for (std::size_t k = 0; k < m; ++k) {
    // The glue map is the rotation (y,z) -> (-y,-z): the reflection through
    // the totally geodesic boundary sphere. It commutes with the ambient
    // complex structure, so the mirrored half is again a soliton, and it
    // coincides with the smooth ODE continuation through s = 0. All
    // curvature scalars continue oddly (u, g, r, |A|^2 even; v, y, z, H,
    // lambda_i, drift_a odd); theta_amb shifts by -pi (the (y,z) polar angle
    // jumps across the origin).
    const ProfileSample& p = half.samples[k];
    ProfileSample q = p;
    q.s = -p.s;
    q.v = -p.v;
    q.y = -p.y;
    q.z = -p.z;
    q.H = -p.H;
    q.lambda_tan = -p.lambda_tan;
    q.lambda_prof = -p.lambda_prof;
    q.drift_a = -p.drift_a;
    q.theta_amb = p.theta_amb - M_PI;
    out.samples[m - 1 - k] = q;
    out.samples[m - 1 + k] = p;
  }
  if (glue_index) *glue_index = m - 1;
  return out;
}

CompletenessReport metric_completeness_report(const ProfileCurve& curve) {
  if (curve.samples.empty())
    throw std::invalid_argument("metric_completeness_report: empty curve");
  CompletenessReport rep;
  rep.inf_u = curve.samples.front().u;
  rep.inf_u_s = curve.samples.front().s;
  rep.warp_values.reserve(curve.samples.size());
  for (const auto& p : curve.samples) {
    rep.warp_values.push_back(p.u);
    if (p.u < rep.inf_u) {
      rep.inf_u = p.u;
      rep.inf_u_s = p.s;
    }
  }
  return rep;
}

ProfileInvariants profile_invariants(const ProfileCurve& curve) {
  ProfileInvariants inv;
  const std::size_t N = curve.samples.size();
  for (const auto& p : curve.samples) {
    inv.max_sphere_dev = std::max(
        inv.max_sphere_dev, std::fabs(p.u * p.u + p.y * p.y + p.z * p.z - 1.0));
    inv.max_h_cross = std::max(inv.max_h_cross, std::fabs(p.H + p.v));
    inv.max_xitop_dev = std::max(
        inv.max_xitop_dev,
        std::fabs(p.drift_a * p.drift_a + p.u * p.u + p.H * p.H - 1.0));
  }
  if (curve.uniform && N >= 5) {
    // 4th-order central differences for the unit-speed constraint
    const double h = curve.step;
    for (std::size_t k = 2; k + 2 < N; ++k) {
      auto d4 = [&](auto&& get) {
        return (-get(curve.samples[k + 2]) + 8.0 * get(curve.samples[k + 1]) -
                8.0 * get(curve.samples[k - 1]) + get(curve.samples[k - 2])) /
               (12.0 * h);
      };
      const double du = d4([](const ProfileSample& p) { return p.u; });
      const double dy = d4([](const ProfileSample& p) { return p.y; });
      const double dz = d4([](const ProfileSample& p) { return p.z; });
      inv.max_speed_dev = std::max(
          inv.max_speed_dev, std::fabs(du * du + dy * dy + dz * dz - 1.0));
    }
  }
  return inv;
}

}  // namespace hopf
