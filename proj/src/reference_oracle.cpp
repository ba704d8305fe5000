#include "darkfield/reference_oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace darkfield::oracle {

namespace {

// Roots of unity exp(sign * 2 pi i k / n), k in [0, n).
std::vector<Complex> twiddles(std::size_t n, double sign) {
  std::vector<Complex> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(n));
  }
  return w;
}

// Bin k -> signed index used for the frequency of that bin.
double signed_index(std::size_t k, std::size_t n) {
  return k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
}

}  // namespace

ComplexField dft_direct(const ComplexField& field, bool inverse) {
  const std::size_t nx = field.nx();
  const std::size_t ny = field.ny();
  if (nx * ny > kMaxOraclePixels) {
    throw std::length_error("oracle DFT limited to " + std::to_string(kMaxOraclePixels) +
                            " pixels, got " + std::to_string(nx * ny));
  }
  const double sign = inverse ? 1.0 : -1.0;
  const auto wx = twiddles(nx, sign);
  const auto wy = twiddles(ny, sign);
  const double norm = 1.0 / std::sqrt(static_cast<double>(nx * ny));

  ComplexField out(field.spec());
  for (std::size_t u = 0; u < ny; ++u) {
    for (std::size_t v = 0; v < nx; ++v) {
      Complex acc{};
      for (std::size_t r = 0; r < ny; ++r) {
        const Complex row_phase = wy[(u * r) % ny];
        for (std::size_t c = 0; c < nx; ++c) {
          acc += field(r, c) * row_phase * wx[(v * c) % nx];
        }
      }
      out(u, v) = acc * norm;
    }
  }
  return out;
}

ComplexField propagate_direct(const ComplexField& field, const AberrationSet& set,
                              double amplification_limit) {
  const GridSpec& spec = field.spec();
  ComplexField spectrum = dft_direct(field, false);
  // Frequencies rebuilt here from the bin definition rather than taken from
  // frequency_coords.
  const double step_x = 2.0 * std::numbers::pi / spec.width;
  const double step_y = 2.0 * std::numbers::pi / spec.height;
  for (std::size_t u = 0; u < spec.ny; ++u) {
    const double ky = step_y * signed_index(u, spec.ny);
    for (std::size_t v = 0; v < spec.nx; ++v) {
      const double kx = step_x * signed_index(v, spec.nx);
      spectrum(u, v) *= chi(set, kx, ky, amplification_limit);
    }
  }
  return dft_direct(spectrum, true);
}

}  // namespace darkfield::oracle
