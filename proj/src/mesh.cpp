#include "hopf/mesh.hpp"

#include <cmath>
#include <fstream>

namespace hopf {

void MeshExportConfig::validate() const {
  if (alpha_resolution < 3) throw std::invalid_argument("mesh: alpha_resolution < 3");
  if (s_stride < 1) throw std::invalid_argument("mesh: s_stride < 1");
  if (!(min_pole_distance > 0)) throw std::invalid_argument("mesh: min_pole_distance <= 0");
  const double n2 = pole[0] * pole[0] + pole[1] * pole[1] + pole[2] * pole[2] +
                    pole[3] * pole[3];
  if (std::fabs(n2 - 1.0) > 1e-9) throw std::invalid_argument("mesh: pole must be unit");
}

namespace {

// Orthonormal basis of pole^perp (rows), via Gram-Schmidt over the standard
// basis, skipping the most pole-aligned axis.
std::array<std::array<double, 4>, 3> perp_basis(const std::array<double, 4>& w) {
  int skip = 0;
  for (int i = 1; i < 4; ++i)
    if (std::fabs(w[i]) > std::fabs(w[skip])) skip = i;
  std::array<std::array<double, 4>, 3> basis{};
  int row = 0;
  std::array<std::array<double, 4>, 3> seeds{};
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == skip) continue;
    seeds[k][i] = 1.0;
    ++k;
  }
  for (int sdx = 0; sdx < 3; ++sdx) {
    std::array<double, 4> v = seeds[sdx];
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d += v[i] * w[i];
    for (int i = 0; i < 4; ++i) v[i] -= d * w[i];
    for (int r = 0; r < row; ++r) {
      double e = 0.0;
      for (int i = 0; i < 4; ++i) e += v[i] * basis[r][i];
      for (int i = 0; i < 4; ++i) v[i] -= e * basis[r][i];
    }
    double nrm = 0.0;
    for (int i = 0; i < 4; ++i) nrm += v[i] * v[i];
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) continue;
    for (int i = 0; i < 4; ++i) basis[row][i] = v[i] / nrm;
    ++row;
  }
  if (row != 3) throw MeshError("mesh: degenerate pole basis");
  return basis;
}

}  // namespace

void export_mesh_obj(const ProfileCurve& curve, const MeshExportConfig& cfg,
                     const std::filesystem::path& path) {
  cfg.validate();
  if (curve.samples.empty()) throw std::invalid_argument("mesh: empty profile");
  if (curve.params.n != 1)
    throw std::invalid_argument("mesh: export is defined for n = 1 only");

  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < curve.samples.size(); i += cfg.s_stride)
    rows.push_back(i);
  if (rows.back() != curve.samples.size() - 1) rows.push_back(curve.samples.size() - 1);
  if (rows.size() < 2) throw std::invalid_argument("mesh: not enough profile rows");

  const auto basis = perp_basis(cfg.pole);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataFormatError("cannot open for writing: " + path.string());
  out << "# rotational surface in S^3, stereographic projection\n";

  const int A = cfg.alpha_resolution;
  for (const std::size_t ri : rows) {
    const auto& p = curve.samples[ri];
    for (int j = 0; j < A; ++j) {
      const double a = 2.0 * M_PI * j / A;
      const std::array<double, 4> x = {p.u * std::cos(a), p.u * std::sin(a), p.y, p.z};
      const double nrm2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
      if (std::fabs(nrm2 - 1.0) > 1e-8)
        throw MeshError("mesh: sample off the unit sphere at s = " +
                        format_double(p.s));
      double dot = 0.0;
      for (int i = 0; i < 4; ++i) dot += x[i] * cfg.pole[i];
      const double dist = std::sqrt(std::max(0.0, 2.0 * (1.0 - dot)));
      if (dist < cfg.min_pole_distance)
        throw MeshError("mesh: pole too close to the surface at s = " +
                        format_double(p.s) + " alpha = " + format_double(a));
      const double denom = 1.0 - dot;
      double proj[3];
      for (int r = 0; r < 3; ++r) {
        double c = 0.0;
        for (int i = 0; i < 4; ++i) c += x[i] * basis[r][i];
        proj[r] = c / denom;
      }
      out << "v " << format_double(proj[0]) << ' ' << format_double(proj[1]) << ' '
          << format_double(proj[2]) << '\n';
    }
  }
  // quad faces; alpha wraps, s does not
  const auto vid = [&](std::size_t i, int j) {
    return static_cast<long long>(i) * A + (j % A) + 1;  // OBJ is 1-based
  };
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    for (int j = 0; j < A; ++j)
      out << "f " << vid(i, j) << ' ' << vid(i + 1, j) << ' ' << vid(i + 1, j + 1)
          << ' ' << vid(i, j + 1) << '\n';
  if (!out) throw DataFormatError("write failed: " + path.string());
}

}  // namespace hopf
