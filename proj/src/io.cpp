#include "hopf/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hopf {

std::size_t Table::col(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw DataFormatError("table: missing column '" + name + "'");
}

bool Table::has_col(const std::string& name) const {
  for (const auto& c : columns)
    if (c == name) return true;
  return false;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_table(const std::filesystem::path& path, const Table& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataFormatError("cannot open for writing: " + path.string());
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size())
      throw DataFormatError("table: ragged row");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw DataFormatError("write failed: " + path.string());
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataFormatError("cannot open: " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw DataFormatError("empty table: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
  if (t.columns.empty()) throw DataFormatError("table without columns");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(t.columns.size());
    const char* p = line.c_str();
    char* end = nullptr;
    while (true) {
      const double v = std::strtod(p, &end);
      if (end == p) throw DataFormatError("bad number at line " + std::to_string(lineno));
      row.push_back(v);
      p = end;
      if (*p == ',') { ++p; continue; }
      if (*p == '\0') break;
      throw DataFormatError("bad separator at line " + std::to_string(lineno));
    }
    if (row.size() != t.columns.size())
      throw DataFormatError("wrong column count at line " + std::to_string(lineno));
    if (!std::all_of(row.begin(), row.end(), [](double v) { return std::isfinite(v); }))
      throw DataFormatError("non-finite value at line " + std::to_string(lineno));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table trajectory_table(const SolitonParams& par, const Trajectory& traj) {
  Table t;
  t.columns = {"s", "u", "v", "g", "zeta", "theta_unwrapped"};
  t.rows.reserve(traj.samples.size());
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& p = traj.samples[i];
    const double th = i < traj.theta_unwrapped.size() ? traj.theta_unwrapped[i] : 0.0;
    t.rows.push_back({p.s, p.u, p.v, std::max(0.0, p.g),
                      zeta(par, p.point()), th});
  }
  return t;
}

Table profile_table(const ProfileCurve& curve) {
  Table t;
  t.columns = {"s", "u", "v", "g", "r", "theta_amb", "y", "z", "lambda_tan",
               "lambda_prof", "H", "normA2", "traceless2", "drift_a"};
  t.rows.reserve(curve.samples.size());
  for (const auto& p : curve.samples)
    t.rows.push_back({p.s, p.u, p.v, p.g, p.r, p.theta_amb, p.y, p.z,
                      p.lambda_tan, p.lambda_prof, p.H, p.normA2, p.traceless2,
                      p.drift_a});
  return t;
}

Trajectory trajectory_from_table(const SolitonParams& par, const Table& t) {
  Trajectory traj;
  traj.params = par;
  const std::size_t cs = t.col("s"), cu = t.col("u"), cv = t.col("v"),
                    cg = t.col("g"), cth = t.col("theta_unwrapped");
  for (const auto& row : t.rows) {
    traj.samples.push_back({row[cs], row[cu], row[cv], row[cg]});
    traj.theta_unwrapped.push_back(row[cth]);
    ExtState x{row[cu], row[cv], row[cg]};
    traj.slopes.push_back(phase_rhs(par.n, x));
  }
  if (traj.samples.size() >= 2)
    traj.direction = traj.samples.back().s >= traj.samples.front().s
                         ? Direction::forward
                         : Direction::backward;
  return traj;
}

ProfileCurve profile_from_table(const SolitonParams& par, int theta_sign, const Table& t) {
  ProfileCurve c;
  c.params = par;
  c.theta_sign = theta_sign;
  const char* names[] = {"s", "u", "v", "g", "r", "theta_amb", "y", "z",
                         "lambda_tan", "lambda_prof", "H", "normA2",
                         "traceless2", "drift_a"};
  std::size_t idx[14];
  for (int i = 0; i < 14; ++i) idx[i] = t.col(names[i]);
  for (const auto& row : t.rows) {
    ProfileSample p;
    p.s = row[idx[0]];
    p.u = row[idx[1]];
    p.v = row[idx[2]];
    p.g = row[idx[3]];
    p.r = row[idx[4]];
    p.theta_amb = row[idx[5]];
    p.y = row[idx[6]];
    p.z = row[idx[7]];
    p.lambda_tan = row[idx[8]];
    p.lambda_prof = row[idx[9]];
    p.H = row[idx[10]];
    p.normA2 = row[idx[11]];
    p.traceless2 = row[idx[12]];
    p.drift_a = row[idx[13]];
    c.samples.push_back(p);
  }
  // detect a uniform grid
  if (c.samples.size() >= 3) {
    const double h = c.samples[1].s - c.samples[0].s;
    bool uni = h > 0;
    for (std::size_t k = 1; uni && k < c.samples.size(); ++k)
      uni = std::fabs(c.samples[k].s - c.samples[k - 1].s - h) < 1e-9;
    c.uniform = uni;
    c.step = uni ? h : 0.0;
  }
  return c;
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataFormatError("cannot open: " + path.string());
  std::uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

void KeyValueDoc::add(const std::string& k, const std::string& v) {
  entries.emplace_back(k, v);
}
void KeyValueDoc::add(const std::string& k, double v) { add(k, format_double(v)); }
void KeyValueDoc::add(const std::string& k, long long v) { add(k, std::to_string(v)); }

const std::string* KeyValueDoc::find(const std::string& k) const {
  for (const auto& [key, val] : entries)
    if (key == k) return &val;
  return nullptr;
}

void write_keyvalue(const std::filesystem::path& path, const KeyValueDoc& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataFormatError("cannot open for writing: " + path.string());
  for (const auto& [k, v] : doc.entries) out << k << '=' << v << '\n';
  if (!out) throw DataFormatError("write failed: " + path.string());
}

KeyValueDoc read_keyvalue(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataFormatError("cannot open: " + path.string());
  KeyValueDoc doc;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataFormatError("bad key=value line: " + line);
    doc.entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return doc;
}

void RunManifest::write(const std::filesystem::path& path) const {
  KeyValueDoc doc;
  doc.add("tool", std::string(kToolName));
  doc.add("version", std::string(kToolVersion));
  doc.add("command", command);
  doc.add("args", args);
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char ts[32];
  std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  doc.add("created_utc", std::string(ts));
  for (const auto& [k, v] : config.entries) doc.add("cfg." + k, v);
  for (const auto& out : outputs) {
    char digest[32];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(out)));
    doc.add("output", out.filename().string() + " fnv1a64:" + digest);
  }
  write_keyvalue(path, doc);
}

}  // namespace hopf
