#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "darkfield/config.hpp"
#include "darkfield/field_grid.hpp"
#include "darkfield/specimen.hpp"

namespace darkfield {

struct Diagnostics {
  double input_power = 0.0;   // exit wave, m^2
  double output_power = 0.0;  // screen field, m^2
  Complex chi_dc;
  double max_chi_modulus = 0.0;
  std::optional<double> fresnel_number;  // a^2 / (lambda |z|), defocus only
};

struct SimulationResult {
  ComplexField exit;
  ComplexField screen;
  RealImage image;
  Diagnostics diagnostics;
};

/// Projected thickness for the configured object: thresholded, smoothed
/// raster, or all zeros when no raster is given.
ThicknessMap build_thickness(const SimulationConfig& config);

/// Runs the whole pipeline in memory.
SimulationResult simulate(const SimulationConfig& config);

/// Writes the intensity image (and field dump when requested). Relative
/// output paths are resolved against `output_dir`.
void write_outputs(const SimulationResult& result, const SimulationConfig& config,
                   const std::filesystem::path& output_dir);

struct PsfResult {
  ComplexField green;
  RealImage image;
  Diagnostics diagnostics;
};

/// Green function of the configured aberration set on the configured grid.
PsfResult point_spread(const SimulationConfig& config);
void write_psf(const PsfResult& result, const SimulationConfig& config,
               const std::filesystem::path& output_dir);

void print_diagnostics(std::ostream& os, const Diagnostics& d);

struct PresetParameters {
  double wavelength = 632.8e-9;
  double defocus = 10e-3;
  double tilt_amplitude = 3e-6;
  double tilt_alpha = 1.5707963267948966;
  double spherical_cs = 5e-3;
};

/// Human-readable preset formulas and their coefficient values.
void print_presets(std::ostream& os, const PresetParameters& p);

/// Fast pipeline vs brute-force oracle on small random grids. Returns true
/// when every comparison is within 1e-10.
bool run_selftest(std::ostream& os, int seeds = 10);

}  // namespace darkfield
