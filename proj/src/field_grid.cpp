#include "darkfield/field_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace darkfield {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_same_spec(const GridSpec& a, const GridSpec& b, const char* op) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(op) + ": grid specs differ");
  }
}

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

ComplexField transform(const ComplexField& field, int sign) {
  ComplexField out = field;
  auto data = out.data();
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());

  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(field.ny()), static_cast<int>(field.nx()), buffer,
                            buffer, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) {
    throw std::runtime_error("fftw: failed to create plan");
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(field.spec().size()));
  for (auto& v : data) v *= scale;
  return out;
}

}  // namespace

void GridSpec::validate() const {
  if (nx < 2 || ny < 2 || nx % 2 != 0 || ny % 2 != 0) {
    throw std::invalid_argument("grid dimensions must be even and at least 2, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  }
  if (!positive_finite(width) || !positive_finite(height)) {
    throw std::invalid_argument("grid extent must be positive");
  }
  if (!positive_finite(wavelength)) {
    throw std::invalid_argument("wavelength must be positive");
  }
}

double GridSpec::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

ComplexField::ComplexField(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  data_.assign(spec_.size(), Complex{});
}

ComplexField::ComplexField(const GridSpec& spec, ComplexBuffer data)
    : spec_(spec), data_(std::move(data)) {
  spec_.validate();
  if (data_.size() != spec_.size()) {
    throw std::invalid_argument("field data length " + std::to_string(data_.size()) +
                                " does not match grid size " + std::to_string(spec_.size()));
  }
  if (!is_finite()) {
    throw std::invalid_argument("field contains non-finite values");
  }
}

bool ComplexField::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  require_same_spec(spec_, other.spec_, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  require_same_spec(spec_, other.spec_, "subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(const ComplexField& other) {
  require_same_spec(spec_, other.spec_, "multiply");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] *= other.data_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(Complex scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
ComplexField operator*(ComplexField a, Complex scale) { return a *= scale; }

RealImage::RealImage(const GridSpec& spec, std::vector<double> data)
    : spec_(spec), data_(std::move(data)) {
  spec_.validate();
  if (data_.size() != spec_.size()) {
    throw std::invalid_argument("image data length does not match grid size");
  }
  for (double v : data_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("image values must be finite and non-negative");
    }
  }
}

double RealImage::min() const { return *std::min_element(data_.begin(), data_.end()); }
double RealImage::max() const { return *std::max_element(data_.begin(), data_.end()); }
double RealImage::mean() const {
  return std::accumulate(data_.begin(), data_.end(), 0.0) / static_cast<double>(data_.size());
}

ComplexField plane_wave(const GridSpec& spec, double amplitude, double phase) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("plane wave amplitude must be non-negative");
  }
  ComplexField field(spec);
  std::fill(field.data().begin(), field.data().end(), std::polar(amplitude, phase));
  return field;
}

namespace {

std::vector<double> axis_frequencies(std::size_t n, double pitch) {
  std::vector<double> k(n);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  const double step = 2.0 * std::numbers::pi / (static_cast<double>(n) * pitch);
  for (std::size_t i = 0; i < n; ++i) {
    auto j = static_cast<std::ptrdiff_t>(i);
    if (j >= half) j -= static_cast<std::ptrdiff_t>(n);
    k[i] = step * static_cast<double>(j);
  }
  return k;
}

}  // namespace

FrequencyCoords frequency_coords(const GridSpec& spec) {
  spec.validate();
  return {axis_frequencies(spec.nx, spec.dx()), axis_frequencies(spec.ny, spec.dy())};
}

ComplexField forward_transform(const ComplexField& field) { return transform(field, FFTW_FORWARD); }
ComplexField inverse_transform(const ComplexField& field) { return transform(field, FFTW_BACKWARD); }

RealImage intensity(const ComplexField& field) {
  std::vector<double> values(field.data().size());
  std::transform(field.data().begin(), field.data().end(), values.begin(),
                 [](const Complex& v) { return std::norm(v); });
  return RealImage(field.spec(), std::move(values));
}

double total_power(const ComplexField& field) {
  double sum = 0.0;
  for (const auto& v : field.data()) sum += std::norm(v);
  return sum * field.spec().dx() * field.spec().dy();
}

ComplexField circshift(const ComplexField& field, std::ptrdiff_t drow, std::ptrdiff_t dcol) {
  const auto ny = static_cast<std::ptrdiff_t>(field.ny());
  const auto nx = static_cast<std::ptrdiff_t>(field.nx());
  auto wrap = [](std::ptrdiff_t i, std::ptrdiff_t n) { return ((i % n) + n) % n; };
  ComplexField out(field.spec());
  for (std::ptrdiff_t r = 0; r < ny; ++r) {
    for (std::ptrdiff_t c = 0; c < nx; ++c) {
      out(static_cast<std::size_t>(wrap(r + drow, ny)), static_cast<std::size_t>(wrap(c + dcol, nx))) =
          field(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  }
  return out;
}

double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  require_same_spec(a.spec(), b.spec(), "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

}  // namespace darkfield
