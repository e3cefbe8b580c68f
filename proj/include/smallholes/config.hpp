#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "smallholes/scene.hpp"

namespace smallholes {

/// Malformed or inadmissible scene configuration.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& file, int line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct SweepPlan {
  /// Strictly decreasing.
  std::vector<double> eps_values;
  /// Expansion levels: 0 is u0 alone, k >= 1 keeps k correction steps.
  std::vector<int> orders{0, 1};
  std::filesystem::path outputs = "results";
  std::uint64_t seed = 0;
  /// Required d_eps / eps; scenes violating it at any requested eps are rejected.
  double min_separation = 10.0;
};

struct SceneConfig {
  Scene scene;
  SweepPlan plan;
};

/// Reads a scene file:
///
///   [domain]     kind = disk | series; coeffs = [a0, a1, ...]
///   [forcing]    kind = zero | constant | point_sources; f0 = ...;
///                sources = x, y, q; x, y, q
///   [inclusion]  shape = ...; base_center = x, y; offset = x, y; exponent = a
///   [sweep]      eps = ...; orders = ...; out = dir; seed = n; min_separation = r
///
/// '#' and ';' start comments. Geometry is validated at every requested eps.
SceneConfig parse_scene(const std::filesystem::path& path);
SceneConfig parse_scene_text(const std::string& text, const std::string& name = "<config>",
                             const std::filesystem::path& base_dir = {});

std::vector<double> parse_number_list(const std::string& text);

}  // namespace smallholes
