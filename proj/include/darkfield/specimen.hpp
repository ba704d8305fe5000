#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "darkfield/field_grid.hpp"

namespace darkfield {

/// Normalized projected thickness in [0, 1], row-major on a grid.
class ThicknessMap {
 public:
  ThicknessMap(const GridSpec& spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::span<const double> values() const& { return values_; }
  std::span<const double> values() && = delete;
  double operator()(std::size_t row, std::size_t col) const { return values_[row * spec_.nx + col]; }

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Single-material optical constants per unit normalized thickness.
struct MaterialCalibration {
  double mu = 0.0;     // intensity attenuation: I = exp(-mu T)
  double kappa = 0.0;  // phase in radians: phi = kappa T
};

/// Thresholds a grayscale raster: value >= threshold * maxval maps to 1.
/// The raster must match the grid exactly; row 0 of the raster is row 0 of
/// the map.
ThicknessMap load_binary_image(const std::filesystem::path& path, const GridSpec& spec,
                               double threshold = 0.5);

/// Periodic convolution with a sampled Gaussian of the given FWHM (pixels),
/// normalized to unit sum. Results are clamped to [0, 1].
ThicknessMap gaussian_smooth(const ThicknessMap& map, double fwhm_px);

/// Gaussian sigma in pixels for a full width at half maximum.
double fwhm_to_sigma(double fwhm_px);

/// Chooses mu so that T = 1 transmits `target_min_intensity` and
/// kappa = `target_max_phase`.
MaterialCalibration calibrate(double target_min_intensity, double target_max_phase);

/// Projection-approximation exit wave: exp(-mu T / 2) * exp(i kappa T).
ComplexField exit_wave(const ThicknessMap& map, const MaterialCalibration& calib);

}  // namespace darkfield
