#include "darkfield/simulation.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <variant>

#include "darkfield/interferometer.hpp"
#include "darkfield/output.hpp"
#include "darkfield/propagator.hpp"
#include "darkfield/reference_oracle.hpp"

namespace darkfield {

namespace {

std::filesystem::path resolve(const std::filesystem::path& dir, const std::filesystem::path& p) {
  return p.is_relative() ? dir / p : p;
}

Diagnostics base_diagnostics(const SimulationConfig& config, const TransferFunction& tf) {
  Diagnostics d;
  d.chi_dc = tf.at_dc();
  d.max_chi_modulus = tf.max_modulus();

  bool has_defocus = false;
  double z = 0.0;
  for (const auto& entry : config.aberrations) {
    if (const auto* e = std::get_if<DefocusEntry>(&entry)) {
      has_defocus = true;
      z += e->z;
    }
  }
  if (has_defocus && config.fresnel_feature_size && z != 0.0) {
    const double a = *config.fresnel_feature_size;
    d.fresnel_number = a * a / (config.grid.wavelength * std::abs(z));
  }
  return d;
}

}  // namespace

ThicknessMap build_thickness(const SimulationConfig& config) {
  if (!config.object.raster_path) {
    return ThicknessMap(config.grid, std::vector<double>(config.grid.size(), 0.0));
  }
  const ThicknessMap binary =
      load_binary_image(*config.object.raster_path, config.grid, config.object.threshold);
  return gaussian_smooth(binary, config.object.smooth_fwhm_px);
}

SimulationResult simulate(const SimulationConfig& config) {
  const ThicknessMap thickness = build_thickness(config);
  const MaterialCalibration calib =
      calibrate(config.contrast.min_intensity, config.contrast.max_phase);
  ComplexField exit = exit_wave(thickness, calib);
  const ComplexField psi0 = plane_wave(config.grid, 1.0, 0.0);

  const AberrationSet set = build_aberration_set(config);
  const TransferFunction tf(config.grid, set, config.amplification_limit);
  ComplexField screen = tf.apply(exit);
  switch (config.mode) {
    case ImagingMode::Bright:
      break;
    case ImagingMode::Dark:
      screen -= psi0 * Complex{config.reference_amplitude, 0.0};
      break;
    case ImagingMode::Custom:
      if (!config.reference_blocked) {
        screen += psi0 * std::polar(config.reference_amplitude, config.phase_bias);
      }
      break;
  }

  Diagnostics d = base_diagnostics(config, tf);
  d.input_power = total_power(exit);
  d.output_power = total_power(screen);
  RealImage image = intensity(screen);
  return {std::move(exit), std::move(screen), std::move(image), d};
}

void write_outputs(const SimulationResult& result, const SimulationConfig& config,
                   const std::filesystem::path& output_dir) {
  write_intensity(result.image, resolve(output_dir, config.outputs.intensity_path),
                  effective_normalization(config));
  if (config.outputs.field_path) {
    write_field(result.screen, resolve(output_dir, *config.outputs.field_path));
  }
}

PsfResult point_spread(const SimulationConfig& config) {
  const AberrationSet set = build_aberration_set(config);
  const TransferFunction tf(config.grid, set, config.amplification_limit);
  ComplexField green = inverse_transform(tf.values());
  Diagnostics d = base_diagnostics(config, tf);
  d.input_power = total_power(tf.values());
  d.output_power = total_power(green);
  RealImage image = intensity(green);
  return {std::move(green), std::move(image), d};
}

void write_psf(const PsfResult& result, const SimulationConfig& config,
               const std::filesystem::path& output_dir) {
  const Normalization norm =
      config.outputs.normalization.value_or(Normalization::minmax());
  write_intensity(result.image, resolve(output_dir, config.outputs.intensity_path), norm);
  if (config.outputs.field_path) {
    write_field(result.green, resolve(output_dir, *config.outputs.field_path));
  }
}

void print_diagnostics(std::ostream& os, const Diagnostics& d) {
  const auto flags = os.flags();
  os << std::setprecision(10);
  os << "input power      " << d.input_power << " m^2\n"
     << "output power     " << d.output_power << " m^2\n"
     << "chi(0,0)         " << d.chi_dc.real() << (d.chi_dc.imag() < 0 ? " - " : " + ")
     << std::abs(d.chi_dc.imag()) << "i\n"
     << "max |chi|        " << d.max_chi_modulus << '\n';
  if (d.fresnel_number) os << "Fresnel number   " << *d.fresnel_number << '\n';
  os.flags(flags);
}

void print_presets(std::ostream& os, const PresetParameters& p) {
  const double k0 = 2.0 * std::numbers::pi / p.wavelength;
  const auto flags = os.flags();
  os << std::setprecision(6);
  os << "wavelength " << p.wavelength << " m, k0 = 2 pi / lambda = " << k0 << " rad/m\n\n";

  const auto defocus = defocus_preset(p.defocus, k0);
  os << "defocus      C20 = C02 = -z / (2 k0)\n"
     << "             z = " << p.defocus << " m -> " << defocus.coefficient(2, 0).real()
     << " m^2\n"
     << "             exponent = -z |k|^2 / (2 k0)\n\n";

  const auto tilt = tilt_preset(p.tilt_amplitude, p.tilt_alpha);
  os << "tilt         C10 = i A_t cos(alpha), C01 = i A_t sin(alpha)\n"
     << "             A_t = " << p.tilt_amplitude << " m, alpha = " << p.tilt_alpha
     << " rad -> C10 = " << tilt.coefficient(1, 0).imag() << "i m, C01 = "
     << tilt.coefficient(0, 1).imag() << "i m\n"
     << "             |chi| = exp(-A_t k . (cos alpha, sin alpha))\n\n";

  const auto sph = spherical_preset(p.spherical_cs, k0);
  os << "spherical    C40 = C04 = C22 / 2 = -Cs / (8 k0^3)\n"
     << "             Cs = " << p.spherical_cs << " m -> C40 = " << sph.coefficient(4, 0).real()
     << " m^4, C22 = " << sph.coefficient(2, 2).real() << " m^4\n"
     << "             exponent = -Cs |k|^4 / (8 k0^3)\n";
  os.flags(flags);
}

bool run_selftest(std::ostream& os, int seeds) {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  bool ok = true;
  const auto flags = os.flags();
  os << std::scientific << std::setprecision(3);
  for (std::size_t n : {8u, 16u}) {
    GridSpec spec{n, n, n * 10e-6, n * 10e-6, 632.8e-9};
    const double k0 = spec.wavenumber();
    const std::pair<const char*, AberrationSet> sets[] = {
        {"defocus", defocus_preset(10e-3, k0)},
        {"tilt", tilt_preset(3e-6, std::numbers::pi / 2)},
        {"spherical", spherical_preset(5e-3, k0)},
    };

    ComplexField field(spec);
    double transform_err = 0.0;
    for (int s = 0; s < seeds; ++s) {
      for (auto& v : field.data()) v = {dist(rng), dist(rng)};
      transform_err =
          std::max(transform_err, max_abs_diff(forward_transform(field), oracle::dft_direct(field, false)));
      for (const auto& [name, set] : sets) {
        const double err = max_abs_diff(propagate(field, set), oracle::propagate_direct(field, set));
        if (!(err < 1e-10)) {
          os << "FAIL " << n << "x" << n << " " << name << " seed " << s << ": " << err << '\n';
          ok = false;
        }
      }
    }
    os << (transform_err < 1e-11 ? "ok   " : "FAIL ") << n << "x" << n
       << " forward transform vs direct DFT, max diff " << transform_err << '\n';
    ok = ok && transform_err < 1e-11;
  }
  os << (ok ? "ok   " : "FAIL ") << "propagation vs direct oracle, " << seeds
     << " seeds x 3 presets x 2 grids\n";
  os.flags(flags);
  return ok;
}

}  // namespace darkfield
