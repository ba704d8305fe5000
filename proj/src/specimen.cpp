#include "darkfield/specimen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "darkfield/errors.hpp"
#include "darkfield/raster.hpp"

namespace darkfield {

ThicknessMap::ThicknessMap(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  if (values_.size() != spec_.size()) {
    throw std::invalid_argument("thickness map length does not match grid size");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("thickness values must lie in [0, 1]");
    }
  }
}

ThicknessMap load_binary_image(const std::filesystem::path& path, const GridSpec& spec,
                               double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (0, 1)");
  }
  spec.validate();
  const Raster raster = read_raster(path);
  if (raster.width != spec.nx || raster.height != spec.ny) {
    throw RasterError(path.string() + ": raster is " + std::to_string(raster.width) + "x" +
                      std::to_string(raster.height) + ", grid is " + std::to_string(spec.nx) +
                      "x" + std::to_string(spec.ny));
  }
  const double cut = threshold * static_cast<double>(raster.maxval);
  std::vector<double> values(raster.pixels.size());
  std::transform(raster.pixels.begin(), raster.pixels.end(), values.begin(),
                 [cut](std::uint16_t p) { return static_cast<double>(p) >= cut ? 1.0 : 0.0; });
  return ThicknessMap(spec, std::move(values));
}

double fwhm_to_sigma(double fwhm_px) { return fwhm_px / (2.0 * std::sqrt(2.0 * std::log(2.0))); }

namespace {

// Gaussian weights on a ring of n samples centred on index 0, unit sum.
std::vector<double> periodic_gaussian(std::size_t n, double sigma) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(std::min(i, n - i));
    w[i] = std::exp(-0.5 * (d / sigma) * (d / sigma));
    sum += w[i];
  }
  for (auto& v : w) v /= sum;
  return w;
}

}  // namespace

ThicknessMap gaussian_smooth(const ThicknessMap& map, double fwhm_px) {
  if (!(fwhm_px >= 0.0) || !std::isfinite(fwhm_px)) {
    throw std::invalid_argument("smoothing FWHM must be non-negative");
  }
  if (fwhm_px == 0.0) return map;

  const GridSpec& spec = map.spec();
  const double sigma = fwhm_to_sigma(fwhm_px);
  const auto wx = periodic_gaussian(spec.nx, sigma);
  const auto wy = periodic_gaussian(spec.ny, sigma);

  ComplexField kernel(spec);
  ComplexField input(spec);
  for (std::size_t r = 0; r < spec.ny; ++r) {
    for (std::size_t c = 0; c < spec.nx; ++c) {
      kernel(r, c) = wy[r] * wx[c];
      input(r, c) = map(r, c);
    }
  }

  // Unitary DFT: transform(f conv g) = sqrt(N) * F * G.
  ComplexField spectrum = forward_transform(input);
  spectrum *= forward_transform(kernel);
  spectrum *= std::sqrt(static_cast<double>(spec.size()));
  const ComplexField smoothed = inverse_transform(spectrum);

  std::vector<double> values(spec.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::clamp(smoothed.data()[i].real(), 0.0, 1.0);
  }
  return ThicknessMap(spec, std::move(values));
}

MaterialCalibration calibrate(double target_min_intensity, double target_max_phase) {
  if (!(target_min_intensity > 0.0 && target_min_intensity <= 1.0)) {
    throw std::invalid_argument("target minimum intensity must lie in (0, 1]");
  }
  if (!std::isfinite(target_max_phase)) {
    throw std::invalid_argument("target phase must be finite");
  }
  return {-std::log(target_min_intensity), target_max_phase};
}

ComplexField exit_wave(const ThicknessMap& map, const MaterialCalibration& calib) {
  ComplexField field(map.spec());
  auto out = field.data();
  const auto t = map.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = t[i] == 0.0 ? Complex{1.0, 0.0}
                         : std::polar(std::exp(-0.5 * calib.mu * t[i]), calib.kappa * t[i]);
  }
  return field;
}

}  // namespace darkfield
