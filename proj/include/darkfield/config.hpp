#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "darkfield/aberrations.hpp"
#include "darkfield/field_grid.hpp"

namespace darkfield {

struct DefocusEntry {
  double z = 0.0;
};
struct TiltEntry {
  double amplitude = 0.0;
  double alpha = 0.0;
};
struct SphericalEntry {
  double cs = 0.0;
};
struct RawEntry {
  int m = 0;
  int n = 0;
  Complex value;
};
using AberrationEntry = std::variant<DefocusEntry, TiltEntry, SphericalEntry, RawEntry>;

enum class ImagingMode { Bright, Dark, Custom };

struct Normalization {
  enum class Kind { FixedRange, MinMax };
  Kind kind = Kind::MinMax;
  double lo = 0.0;
  double hi = 1.0;

  static Normalization fixed_range(double lo, double hi) { return {Kind::FixedRange, lo, hi}; }
  static Normalization minmax() { return {}; }
};

struct ObjectSettings {
  std::optional<std::filesystem::path> raster_path;  // absent: empty object
  double threshold = 0.5;
  double smooth_fwhm_px = 0.0;
};

struct ContrastSettings {
  double min_intensity = 1.0;
  double max_phase = 0.0;
};

struct OutputSettings {
  std::filesystem::path intensity_path;
  std::optional<std::filesystem::path> field_path;
  std::optional<Normalization> normalization;  // absent: chosen by mode
};

/// Parsed simulation config. Lengths are meters, angles radians; relative
/// raster paths are already resolved against the config file's directory.
struct SimulationConfig {
  GridSpec grid;
  ObjectSettings object;
  ContrastSettings contrast;
  std::vector<AberrationEntry> aberrations;
  ImagingMode mode = ImagingMode::Bright;
  double phase_bias = 0.0;
  bool reference_blocked = true;
  double reference_amplitude = 1.0;
  std::optional<double> fresnel_feature_size;
  double amplification_limit = kDefaultAmplificationLimit;
  OutputSettings outputs;
};

/// "632.8nm", "5.12 mm", "3um", "3µm" or a bare number (meters).
double parse_length(const nlohmann::json& value);
double parse_length(std::string_view text);

/// Radians as a number, or a multiple of pi written "3.6pi".
double parse_angle(const nlohmann::json& value);

/// Throws ConfigError on malformed or unknown keys.
SimulationConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
SimulationConfig load_config(const std::filesystem::path& path);

/// All entries combined with add(); presets use the grid wavenumber.
AberrationSet build_aberration_set(const SimulationConfig& config);

/// Normalization used when the config does not name one.
Normalization effective_normalization(const SimulationConfig& config);

std::string_view to_string(ImagingMode mode);

}  // namespace darkfield
