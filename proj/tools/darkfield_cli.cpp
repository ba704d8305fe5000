// Command-line front end for the aberrated bright/dark-field simulator.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "darkfield/config.hpp"
#include "darkfield/errors.hpp"
#include "darkfield/simulation.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kRasterError = 3,
  kAmplificationError = 4,
  kIoError = 5,
};

double length_option(const std::string& text) { return darkfield::parse_length(std::string_view(text)); }

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const darkfield::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const darkfield::RasterError& e) {
    std::cerr << "raster error: " << e.what() << '\n';
    return kRasterError;
  } catch (const darkfield::AmplificationError& e) {
    std::cerr << "amplification error: " << e.what() << '\n';
    return kAmplificationError;
  } catch (const darkfield::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bright-field and aberrated dark-field image simulator"};
  app.set_version_flag("--version", std::string("darkfield ") + DARKFIELD_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir = ".";

  auto* simulate = app.add_subcommand("simulate", "Run a simulation config");
  simulate->add_option("config", config_path, "JSON config")->required();
  simulate->add_option("-o,--output-dir", output_dir, "Directory for relative output paths");

  auto* psf = app.add_subcommand("psf", "Write the Green function of a config's aberrations");
  psf->add_option("config", config_path, "JSON config")->required();
  psf->add_option("-o,--output-dir", output_dir, "Directory for relative output paths");

  std::string wavelength = "632.8nm", defocus = "10mm", tilt = "3um", cs = "5mm";
  std::string alpha = "0.5pi";
  auto* presets = app.add_subcommand("presets", "Print the preset coefficient formulas");
  presets->add_option("--wavelength", wavelength, "Wavelength")->capture_default_str();
  presets->add_option("--defocus", defocus, "Defocus distance z")->capture_default_str();
  presets->add_option("--tilt", tilt, "Incoherent tilt amplitude A_t")->capture_default_str();
  presets->add_option("--alpha", alpha, "Tilt direction (radians or '<x>pi')")->capture_default_str();
  presets->add_option("--cs", cs, "Spherical aberration Cs")->capture_default_str();

  int seeds = 10;
  auto* selftest = app.add_subcommand("selftest", "Compare the FFT pipeline with the direct-DFT oracle");
  selftest->add_option("--seeds", seeds, "Random fields per grid")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    return guarded([&] {
      const auto start = std::chrono::steady_clock::now();
      const auto config = darkfield::load_config(config_path);
      const auto result = darkfield::simulate(config);
      darkfield::write_outputs(result, config, output_dir);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      std::cout << "mode             " << darkfield::to_string(config.mode) << '\n';
      darkfield::print_diagnostics(std::cout, result.diagnostics);
      std::cout << "image range      [" << result.image.min() << ", " << result.image.max() << "]\n"
                << "elapsed          " << elapsed.count() << " s\n";
      return kOk;
    });
  }
  if (psf->parsed()) {
    return guarded([&] {
      const auto config = darkfield::load_config(config_path);
      const auto result = darkfield::point_spread(config);
      darkfield::write_psf(result, config, output_dir);
      darkfield::print_diagnostics(std::cout, result.diagnostics);
      return kOk;
    });
  }
  if (presets->parsed()) {
    return guarded([&] {
      darkfield::PresetParameters p;
      p.wavelength = length_option(wavelength);
      p.defocus = length_option(defocus);
      p.tilt_amplitude = length_option(tilt);
      p.tilt_alpha = darkfield::parse_angle(nlohmann::json(alpha));
      p.spherical_cs = length_option(cs);
      darkfield::print_presets(std::cout, p);
      return kOk;
    });
  }
  if (selftest->parsed()) {
    return guarded([&] { return darkfield::run_selftest(std::cout, seeds) ? kOk : kFailure; });
  }
  return kOk;
}
