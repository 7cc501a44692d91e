// Command-line front end: flow, build-soliton, verify, phase-portrait,
// export-mesh, linearize. Exit codes: 0 ok, 2 invariant/identity violation,
// 3 numeric failure, 64 usage, 65 data format.

#include "hopf/identities.hpp"
#include "hopf/io.hpp"
#include "hopf/mesh.hpp"
#include "hopf/soliton.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace hopf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct GlobalOpts {
  int n = 1;
  std::string out_dir = "out";
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double horizon = 500.0;
  int theta_sign = 1;
  unsigned long long seed = 12345;
};

void add_global(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--n", g.n, "dimension parameter n (hypersurface dim 2n)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", g.out_dir, "output directory");
  cmd->add_option("--abs-tol", g.abs_tol, "absolute integration tolerance");
  cmd->add_option("--rel-tol", g.rel_tol, "relative integration tolerance");
  cmd->add_option("--horizon", g.horizon, "max arclength");
  cmd->add_option("--theta-sign", g.theta_sign, "sign of the ambient angle rate")
      ->check(CLI::IsMember({1, -1}));
  cmd->add_option("--seed", g.seed, "seed for randomized commands");
}

IntegratorConfig integ_config(const GlobalOpts& g) {
  IntegratorConfig cfg;
  cfg.abs_tol = g.abs_tol;
  cfg.rel_tol = g.rel_tol;
  cfg.horizon = g.horizon;
  return cfg;
}

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ViolationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

PhasePoint parse_point(const std::string& s) {
  double a, b;
  char extra;
  if (std::sscanf(s.c_str(), "%lf,%lf%c", &a, &b, &extra) != 2)
    throw UsageError("expected a point as 'u,v', got '" + s + "'");
  return {a, b};
}

std::string echo_common(const GlobalOpts& g) {
  std::ostringstream os;
  os << "--n " << g.n << " --out-dir " << g.out_dir << " --abs-tol "
     << format_double(g.abs_tol) << " --rel-tol " << format_double(g.rel_tol)
     << " --horizon " << format_double(g.horizon) << " --theta-sign "
     << g.theta_sign << " --seed " << g.seed;
  return os.str();
}

KeyValueDoc config_echo(const GlobalOpts& g) {
  KeyValueDoc doc;
  doc.add("n", static_cast<long long>(g.n));
  doc.add("abs_tol", g.abs_tol);
  doc.add("rel_tol", g.rel_tol);
  doc.add("horizon", g.horizon);
  doc.add("theta_sign", static_cast<long long>(g.theta_sign));
  doc.add("seed", static_cast<long long>(g.seed));
  return doc;
}

// ---------------------------------------------------------------- flow ----

struct FlowOpts {
  GlobalOpts g;
  std::string start = "0.3,0";
  bool forward = false;
  bool backward = false;
  std::string method = "series";
  double handoff = kDefaultHandoff;
};

int cmd_flow(const FlowOpts& o) {
  SolitonParams par{o.g.n};
  IntegratorConfig cfg = integ_config(o.g);
  if (o.forward && o.backward) throw UsageError("choose one of --forward/--backward");
  const bool backward = o.backward;

  Trajectory traj;
  traj.params = par;
  if (o.start == "equilibrium") {
    const auto eq = equilibrium(par);
    traj = backward ? integrate_backward(par, eq.point, cfg)  // throws: degenerate
                    : integrate_forward(par, eq.point, cfg);
  } else {
    const PhasePoint p0 = parse_point(o.start);
    if (!(p0.u > 0.0) || p0.u * p0.u + p0.v * p0.v > 1.0 + kDomainTol)
      throw UsageError("start point outside the closed phase domain");
    const bool on_circle = std::fabs(p0.u * p0.u + p0.v * p0.v - 1.0) <= 1e-12;
    if (on_circle) {
      if (backward) throw UsageError("backward runs cannot start on the circle");
      const bool is_pole = std::fabs(p0.u - 1.0) <= 1e-12 && std::fabs(p0.v) <= 1e-12;
      BoundaryStartMethod m = o.method == "perturbation" || !is_pole
                                  ? BoundaryStartMethod::perturbation
                                  : BoundaryStartMethod::series;
      traj = boundary_branch_trajectory(par, p0, m, cfg, o.handoff);
    } else {
      traj = backward ? integrate_backward(par, p0, cfg)
                      : integrate_forward(par, p0, cfg);
    }
  }

  fs::create_directories(o.g.out_dir);
  const fs::path table_path = fs::path(o.g.out_dir) / "flow.csv";
  write_table(table_path, trajectory_table(par, traj));

  RunManifest man;
  man.command = "flow";
  std::ostringstream args;
  args << echo_common(o.g) << " --start " << o.start
       << (backward ? " --backward" : " --forward");
  if (o.method != "series") args << " --method " << o.method;
  man.args = args.str();
  man.config = config_echo(o.g);
  man.config.add("start", o.start);
  man.config.add("direction", backward ? "backward" : "forward");
  man.config.add("termination", to_string(traj.termination));
  man.outputs = {table_path};
  man.write(fs::path(o.g.out_dir) / "manifest.txt");

  if (traj.termination == Termination::step_failure)
    throw IntegrationError("flow: step failure");
  if (traj.min_zeta_increment < -kZetaTol)
    throw ViolationError("flow: zeta decreased beyond tolerance");
  if (backward && traj.termination == Termination::horizon_reached)
    throw ViolationError("flow: backward run hit the horizon (expected the circle)");
  return kExitOk;
}

// ------------------------------------------------------- build-soliton ----

struct BuildOpts {
  GlobalOpts g;
  double s_max = 0.0;
  double h_out = 5e-4;
  double handoff = kDefaultHandoff;
};

int cmd_build(const BuildOpts& o) {
  SolitonParams par{o.g.n};
  BuildConfig cfg;
  cfg.integ = integ_config(o.g);
  cfg.theta_sign = o.g.theta_sign;
  cfg.s_max = o.s_max;
  cfg.h_out = o.h_out;
  cfg.s_handoff = o.handoff;

  SolitonSurface surf = build_glued_soliton(par, cfg);

  fs::create_directories(o.g.out_dir);
  const fs::path table_path = fs::path(o.g.out_dir) / "profile.csv";
  write_table(table_path, profile_table(surf.profile));

  const auto& d = surf.diagnostics;
  KeyValueDoc diag;
  diag.add("clifford_s_star", d.clifford_s_star);
  diag.add("sign_changes", static_cast<long long>(d.sign_changes));
  diag.add("winding", d.winding);
  diag.add("symmetry_defect", d.symmetry_defect);
  diag.add("reintegration_defect", d.reintegration_defect);
  diag.add("glue_return_dist", d.glue_return_dist);
  diag.add("sup_normA2", d.sup_normA2);
  diag.add("sup_normA2_s", d.sup_normA2_s);
  diag.add("glue_curvature_norm", d.glue_curvature_norm);
  diag.add("terminal_u", d.terminal_u);
  diag.add("limit_radius_fiber", d.limit_radius_fiber);
  diag.add("limit_radius_circle", d.limit_radius_circle);
  diag.add("half_range", d.half_range);
  const auto comp = metric_completeness_report(surf.profile);
  diag.add("inf_u", comp.inf_u);
  diag.add("inf_u_s", comp.inf_u_s);
  const fs::path diag_path = fs::path(o.g.out_dir) / "diagnostics.txt";
  write_keyvalue(diag_path, diag);

  RunManifest man;
  man.command = "build-soliton";
  std::ostringstream args;
  args << echo_common(o.g) << " --h-out " << format_double(o.h_out)
       << " --handoff " << format_double(o.handoff);
  if (o.s_max > 0) args << " --s-max " << format_double(o.s_max);
  man.args = args.str();
  man.config = config_echo(o.g);
  man.config.add("h_out", o.h_out);
  man.config.add("s_handoff", o.handoff);
  man.config.add("s_max", o.s_max);
  man.outputs = {table_path, diag_path};
  man.write(fs::path(o.g.out_dir) / "manifest.txt");
  return kExitOk;
}

// --------------------------------------------------------------- verify ----

struct VerifyOpts {
  GlobalOpts g;
  std::string profile_path;
  double h_fine = 5e-4;
  bool emit_grids = false;
};

int cmd_verify(const VerifyOpts& o) {
  SolitonParams par{o.g.n};
  const Table t = read_table(o.profile_path);

  ProfileCurve curve;
  bool row_checks_ok = true;
  std::string row_check_msg = "ok";

  if (t.has_col("lambda_tan")) {
    curve = profile_from_table(par, o.g.theta_sign, t);
    if (!curve.uniform)
      throw DataFormatError("verify: profile table must be on a uniform grid");
    const auto inv = profile_invariants(curve);
    if (inv.max_h_cross > 1e-7 || inv.max_xitop_dev > 1e-7 ||
        inv.max_sphere_dev > 1e-9) {
      row_checks_ok = false;
      std::ostringstream os;
      os << "row invariants failed: |H+v| " << format_double(inv.max_h_cross)
         << " xitop " << format_double(inv.max_xitop_dev) << " sphere "
         << format_double(inv.max_sphere_dev);
      row_check_msg = os.str();
    }
  } else {
    // trajectory table: re-derive a uniform profile from the first state
    const std::size_t cu = t.col("u"), cv = t.col("v"), cg = t.col("g"),
                      cs = t.col("s");
    if (t.rows.size() < 2) throw DataFormatError("verify: trajectory too short");
    const double s0 = t.rows.front()[cs], s1 = t.rows.back()[cs];
    if (!(s1 > s0)) throw DataFormatError("verify: need a forward trajectory");
    ExtState x0{t.rows.front()[cu], t.rows.front()[cv], t.rows.front()[cg]};
    if (!(x0.g > 1e-6))
      throw DataFormatError("verify: trajectory start must be interior");
    // zeta monotone along the rows
    double prev = -1.0;
    for (const auto& row : t.rows) {
      const double z = zeta(par, {row[cu], row[cv]});
      if (prev >= 0 && z < prev - kZetaTol) {
        row_checks_ok = false;
        row_check_msg = "zeta decreases along the trajectory rows";
      }
      prev = z;
    }
    const long nsteps = std::lround((s1 - s0) / o.h_fine);
    curve = uniform_profile_from_state(par, x0, s0, o.h_fine, std::max(5L, nsteps),
                                       o.g.theta_sign);
  }

  const auto reports = run_identity_suite(curve);

  fs::create_directories(o.g.out_dir);
  KeyValueDoc doc;
  doc.add("profile", o.profile_path);
  doc.add("n", static_cast<long long>(par.n));
  doc.add("row_checks", row_checks_ok ? "pass" : row_check_msg);
  bool all_pass = row_checks_ok;
  for (const auto& rep : reports) {
    std::ostringstream os;
    os << "h=" << format_double(rep.h) << " tol=" << format_double(rep.tol)
       << " max_residual=" << format_double(rep.max_residual)
       << " max_residual_fine=" << format_double(rep.max_residual_fine)
       << " refinement_factor=" << format_double(rep.refinement_factor)
       << " pass=" << (rep.pass ? "true" : "false");
    doc.add("identity." + rep.identity_name, os.str());
    all_pass = all_pass && rep.pass;
  }
  doc.add("all_pass", all_pass ? "true" : "false");
  const fs::path report_path = fs::path(o.g.out_dir) / "identities.txt";
  write_keyvalue(report_path, doc);

  std::vector<fs::path> outputs = {report_path};
  if (o.emit_grids) {
    for (const auto& rep : reports) {
      Table grid;
      grid.columns = {"residual"};
      for (double r : rep.residual_grid)
        grid.rows.push_back({std::isnan(r) ? 0.0 : r});
      const fs::path p = fs::path(o.g.out_dir) / ("residual_" + rep.identity_name + ".csv");
      write_table(p, grid);
      outputs.push_back(p);
    }
  }

  RunManifest man;
  man.command = "verify";
  std::ostringstream args;
  args << echo_common(o.g) << " --profile " << o.profile_path;
  if (o.emit_grids) args << " --grids";
  man.args = args.str();
  man.config = config_echo(o.g);
  man.outputs = outputs;
  man.write(fs::path(o.g.out_dir) / "manifest.txt");

  if (!all_pass) return kExitViolation;
  return kExitOk;
}

// ------------------------------------------------------ phase-portrait ----

struct PortraitOpts {
  GlobalOpts g;
  std::string grid = "5x5";
  double u_min = 0.15, u_max = 0.9, v_min = -0.6, v_max = 0.6;
};

struct PortraitJobResult {
  Trajectory fwd, bwd;
  bool ok = false;
  std::string error;
};

int cmd_portrait(const PortraitOpts& o) {
  SolitonParams par{o.g.n};
  IntegratorConfig cfg = integ_config(o.g);
  int rows = 0, cols = 0;
  if (std::sscanf(o.grid.c_str(), "%dx%d", &rows, &cols) != 2 || rows < 1 || cols < 1)
    throw UsageError("bad --grid, expected RxC");

  std::vector<PhasePoint> pts;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double u = rows == 1 ? o.u_min
                                 : o.u_min + (o.u_max - o.u_min) * i / (rows - 1);
      const double v = cols == 1 ? o.v_min
                                 : o.v_min + (o.v_max - o.v_min) * j / (cols - 1);
      PhasePoint p{u, v};
      if (p.u > 0.05 && g_of(p) > 0.05) pts.push_back(p);
    }
  if (pts.empty()) throw UsageError("grid contains no interior points");

  // fan out; aggregate in input order
  std::vector<std::future<PortraitJobResult>> futures;
  futures.reserve(pts.size());
  for (const auto& p : pts)
    futures.push_back(std::async(std::launch::async, [par, cfg, p]() {
      PortraitJobResult r;
      try {
        r.fwd = integrate_forward(par, p, cfg);
        r.bwd = integrate_backward(par, p, cfg);
        r.ok = true;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      return r;
    }));

  fs::create_directories(o.g.out_dir);
  Table index;
  index.columns = {"id", "u0", "v0", "fwd_term", "bwd_term", "fwd_s_end",
                   "fwd_dist_eq", "min_dzeta_fwd", "min_dzeta_bwd",
                   "bwd_s_end", "bwd_circle_dev", "bwd_zeta_end",
                   "theta_rate_tail_max", "ok"};
  const auto eq = equilibrium(par);
  std::vector<fs::path> outputs;
  bool all_ok = true;
  char name[64];
  for (std::size_t k = 0; k < futures.size(); ++k) {
    PortraitJobResult r = futures[k].get();
    const auto& p0 = pts[k];
    double fwd_s = 0, fdist = 0, bs = 0, bdev = 0, bz = 0, th_tail = 0;
    double mzf = 0, mzb = 0;
    if (r.ok) {
      const auto& fl = r.fwd.samples.back();
      fwd_s = fl.s;
      fdist = std::hypot(fl.u - eq.point.u, fl.v - eq.point.v);
      mzf = r.fwd.min_zeta_increment;
      mzb = r.bwd.min_zeta_increment;
      const auto& bl = r.bwd.samples.back();
      bs = bl.s;
      bdev = std::fabs(bl.u * bl.u + bl.v * bl.v - 1.0);
      bz = zeta(par, bl.point());
      // sup of theta' over the last 5% of backward arclength
      const double span = r.bwd.arclength_span();
      const double s_tail = bl.s + 0.05 * span;
      bool first = true;
      for (const auto& smp : r.bwd.samples) {
        if (smp.s > s_tail) continue;
        const double rate = polar_angle_rate(par, smp.point());
        if (first || rate > th_tail) th_tail = rate;
        first = false;
      }
      snprintf(name, sizeof name, "fwd_%03zu.csv", k);
      const fs::path fp = fs::path(o.g.out_dir) / name;
      write_table(fp, trajectory_table(par, r.fwd));
      outputs.push_back(fp);
      snprintf(name, sizeof name, "bwd_%03zu.csv", k);
      const fs::path bp = fs::path(o.g.out_dir) / name;
      write_table(bp, trajectory_table(par, r.bwd));
      outputs.push_back(bp);
    } else {
      all_ok = false;
    }
    index.rows.push_back({static_cast<double>(k), p0.u, p0.v,
                          r.ok ? static_cast<double>(static_cast<int>(r.fwd.termination)) : -1.0,
                          r.ok ? static_cast<double>(static_cast<int>(r.bwd.termination)) : -1.0,
                          fwd_s, fdist, mzf, mzb, bs, bdev, bz, th_tail,
                          r.ok ? 1.0 : 0.0});
  }
  const fs::path index_path = fs::path(o.g.out_dir) / "index.csv";
  write_table(index_path, index);
  outputs.push_back(index_path);

  RunManifest man;
  man.command = "phase-portrait";
  std::ostringstream args;
  args << echo_common(o.g) << " --grid " << o.grid << " --u-min " << o.u_min
       << " --u-max " << o.u_max << " --v-min " << o.v_min << " --v-max " << o.v_max;
  man.args = args.str();
  man.config = config_echo(o.g);
  man.config.add("grid", o.grid);
  man.config.add("termination_codes", "0=equilibrium_reached 1=horizon_reached 2=boundary_hit 3=step_failure");
  man.outputs = outputs;
  man.write(fs::path(o.g.out_dir) / "manifest.txt");
  return all_ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------- export-mesh ----

struct MeshOpts {
  GlobalOpts g;
  std::string profile_path;
  int alpha_res = 64;
  int s_stride = 16;
  std::string pole = "0,0,0,1";
  double min_pole_distance = 0.05;
};

int cmd_mesh(const MeshOpts& o) {
  SolitonParams par{o.g.n};
  if (par.n != 1) throw UsageError("export-mesh supports n = 1 only");
  const Table t = read_table(o.profile_path);
  if (t.rows.empty()) throw UsageError("export-mesh: empty profile");
  ProfileCurve curve = profile_from_table(par, o.g.theta_sign, t);

  MeshExportConfig cfg;
  cfg.alpha_resolution = o.alpha_res;
  cfg.s_stride = o.s_stride;
  cfg.min_pole_distance = o.min_pole_distance;
  double w[4];
  char extra;
  if (std::sscanf(o.pole.c_str(), "%lf,%lf,%lf,%lf%c", &w[0], &w[1], &w[2], &w[3],
                  &extra) != 4)
    throw UsageError("bad --pole, expected 'x1,x2,x3,x4'");
  cfg.pole = {w[0], w[1], w[2], w[3]};

  fs::create_directories(o.g.out_dir);
  const fs::path mesh_path = fs::path(o.g.out_dir) / "mesh.obj";
  export_mesh_obj(curve, cfg, mesh_path);

  RunManifest man;
  man.command = "export-mesh";
  std::ostringstream args;
  args << echo_common(o.g) << " --profile " << o.profile_path << " --alpha-res "
       << o.alpha_res << " --s-stride " << o.s_stride << " --pole " << o.pole
       << " --min-pole-distance " << format_double(o.min_pole_distance);
  man.args = args.str();
  man.config = config_echo(o.g);
  man.outputs = {mesh_path};
  man.write(fs::path(o.g.out_dir) / "manifest.txt");
  return kExitOk;
}

// ------------------------------------------------------------ linearize ----

int cmd_linearize(const GlobalOpts& g) {
  SolitonParams par{g.n};
  const auto eq = equilibrium(par);
  std::cout << "n=" << par.n << '\n'
            << "point_u=" << format_double(eq.point.u) << '\n'
            << "point_v=" << format_double(eq.point.v) << '\n'
            << "jacobian=[[" << format_double(eq.jacobian[0][0]) << ","
            << format_double(eq.jacobian[0][1]) << "],["
            << format_double(eq.jacobian[1][0]) << ","
            << format_double(eq.jacobian[1][1]) << "]]\n"
            << "alpha=" << format_double(eq.alpha) << '\n'
            << "beta=" << format_double(eq.beta) << '\n'
            << "eigenvalues=" << format_double(eq.alpha) << "+-"
            << format_double(eq.beta) << "i\n"
            << "clifford_radius_fiber=" << format_double(clifford_radii(par)[0]) << '\n'
            << "clifford_radius_circle=" << format_double(clifford_radii(par)[1]) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotationally symmetric Hopf soliton laboratory"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  FlowOpts flow;
  auto* cflow = app.add_subcommand("flow", "integrate one trajectory");
  add_global(cflow, flow.g);
  cflow->add_option("--start", flow.start, "start point 'u,v', or 'equilibrium'");
  cflow->add_flag("--forward", flow.forward, "integrate forward (default)");
  cflow->add_flag("--backward", flow.backward, "integrate backward");
  cflow->add_option("--method", flow.method, "circle-start method: series|perturbation")
      ->check(CLI::IsMember({"series", "perturbation"}));
  cflow->add_option("--handoff", flow.handoff, "circle-start handoff arclength");

  BuildOpts build;
  auto* cbuild = app.add_subcommand("build-soliton", "reflect-and-glue soliton build");
  add_global(cbuild, build.g);
  cbuild->add_option("--s-max", build.s_max, "cap on the half-range S");
  cbuild->add_option("--h-out", build.h_out, "uniform output grid step");
  cbuild->add_option("--handoff", build.handoff, "series handoff arclength");

  VerifyOpts verify;
  auto* cverify = app.add_subcommand("verify", "curvature identity suite on a profile");
  add_global(cverify, verify.g);
  cverify->add_option("--profile", verify.profile_path, "profile or flow table")->required();
  cverify->add_option("--h", verify.h_fine, "fine grid step for re-derivation");
  cverify->add_flag("--grids", verify.emit_grids, "also write residual grids");

  PortraitOpts portrait;
  auto* cport = app.add_subcommand("phase-portrait", "lattice of forward/backward runs");
  add_global(cport, portrait.g);
  cport->add_option("--grid", portrait.grid, "lattice size RxC");
  cport->add_option("--u-min", portrait.u_min);
  cport->add_option("--u-max", portrait.u_max);
  cport->add_option("--v-min", portrait.v_min);
  cport->add_option("--v-max", portrait.v_max);

  MeshOpts mesh;
  auto* cmesh = app.add_subcommand("export-mesh", "OBJ export of the n=1 surface");
  add_global(cmesh, mesh.g);
  cmesh->add_option("--profile", mesh.profile_path, "profile table")->required();
  cmesh->add_option("--alpha-res", mesh.alpha_res, "circle fiber resolution");
  cmesh->add_option("--s-stride", mesh.s_stride, "profile row stride");
  cmesh->add_option("--pole", mesh.pole, "projection pole 'x1,x2,x3,x4'");
  cmesh->add_option("--min-pole-distance", mesh.min_pole_distance);

  GlobalOpts lin;
  auto* clin = app.add_subcommand("linearize", "print the equilibrium data");
  add_global(clin, lin);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cflow->parsed()) return cmd_flow(flow);
    if (cbuild->parsed()) return cmd_build(build);
    if (cverify->parsed()) return cmd_verify(verify);
    if (cport->parsed()) return cmd_portrait(portrait);
    if (cmesh->parsed()) return cmd_mesh(mesh);
    if (clin->parsed()) return cmd_linearize(lin);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataFormatError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ViolationError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const SolitonResidualError& e) {
    std::cerr << "identity violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const MeshError& e) {
    std::cerr << "mesh violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const IntegrationError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
