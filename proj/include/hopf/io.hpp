#pragma once

#include "hopf/profile.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hopf {

class DataFormatError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Comma-separated table with a header row; numbers serialized with 17
// significant digits so binary64 values round-trip exactly.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t col(const std::string& name) const;  // throws DataFormatError
  bool has_col(const std::string& name) const;
};

std::string format_double(double x);  // %.17g
void write_table(const std::filesystem::path& path, const Table& t);
Table read_table(const std::filesystem::path& path);

Table trajectory_table(const SolitonParams& par, const Trajectory& traj);
Table profile_table(const ProfileCurve& curve);

Trajectory trajectory_from_table(const SolitonParams& par, const Table& t);
ProfileCurve profile_from_table(const SolitonParams& par, int theta_sign, const Table& t);

// FNV-1a 64-bit content digest.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

// Line-oriented key=value document (reports, diagnostics, manifests).
struct KeyValueDoc {
  std::vector<std::pair<std::string, std::string>> entries;
  void add(const std::string& k, const std::string& v);
  void add(const std::string& k, double v);
  void add(const std::string& k, long long v);
  const std::string* find(const std::string& k) const;
};

void write_keyvalue(const std::filesystem::path& path, const KeyValueDoc& doc);
KeyValueDoc read_keyvalue(const std::filesystem::path& path);

// Run manifest: configuration echo plus per-output digests. A manifest plus
// the tool reproduces all outputs (re-run `command` with `args`).
struct RunManifest {
  std::string command;
  std::string args;  // canonical argument echo
  KeyValueDoc config;
  std::vector<std::filesystem::path> outputs;

  void write(const std::filesystem::path& path) const;
};

inline constexpr const char* kToolName = "hopf-soliton-lab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace hopf
