#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

namespace darkfield {

using Complex = std::complex<double>;

/// Sampled geometry of a 2-D field. Lengths are in meters.
///
/// Pixel pitch and wavenumber are derived on demand so the stored state
/// never disagrees with itself.
struct GridSpec {
  std::size_t nx = 0;  // columns
  std::size_t ny = 0;  // rows
  double width = 0.0;
  double height = 0.0;
  double wavelength = 0.0;

  /// Throws std::invalid_argument unless nx, ny are even and >= 2 and all
  /// lengths are positive and finite.
  void validate() const;

  double dx() const { return width / static_cast<double>(nx); }
  double dy() const { return height / static_cast<double>(ny); }
  double wavenumber() const;
  std::size_t size() const { return nx * ny; }

  bool operator==(const GridSpec&) const = default;
};

/// Allocator returning 64-byte aligned storage. FFTW chooses codelets from
/// the buffer alignment, so fixing it keeps transforms bit-reproducible.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t alignment{64};

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), alignment));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept {
    return true;
  }
};

using ComplexBuffer = std::vector<Complex, AlignedAllocator<Complex>>;

/// Row-major grid of complex amplitudes, element (row, col) at row * nx + col.
class ComplexField {
 public:
  /// Zero field on a validated grid.
  explicit ComplexField(const GridSpec& spec);
  /// Takes ownership of `data`; throws if the length is wrong or any value is
  /// not finite.
  ComplexField(const GridSpec& spec, ComplexBuffer data);

  const GridSpec& spec() const { return spec_; }
  std::size_t nx() const { return spec_.nx; }
  std::size_t ny() const { return spec_.ny; }

  std::span<Complex> data() & { return data_; }
  std::span<const Complex> data() const& { return data_; }
  std::span<const Complex> data() && = delete;

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * spec_.nx + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * spec_.nx + col];
  }

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);
  ComplexField& operator*=(const ComplexField& other);
  ComplexField& operator*=(Complex scale);

  /// True when every element is finite.
  bool is_finite() const;

 private:
  GridSpec spec_;
  ComplexBuffer data_;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
ComplexField operator*(ComplexField a, Complex scale);

/// Row-major non-negative intensity image.
class RealImage {
 public:
  RealImage(const GridSpec& spec, std::vector<double> data);

  const GridSpec& spec() const { return spec_; }
  std::size_t nx() const { return spec_.nx; }
  std::size_t ny() const { return spec_.ny; }
  std::span<const double> data() const& { return data_; }
  std::span<const double> data() && = delete;

  double operator()(std::size_t row, std::size_t col) const { return data_[row * spec_.nx + col]; }

  double min() const;
  double max() const;
  double mean() const;

 private:
  GridSpec spec_;
  std::vector<double> data_;
};

struct FrequencyCoords {
  std::vector<double> kx;  // rad/m, length nx
  std::vector<double> ky;  // rad/m, length ny
};

ComplexField plane_wave(const GridSpec& spec, double amplitude, double phase);

/// Angular spatial frequencies in DFT bin order (DC first, Nyquist mapped to
/// the negative end).
FrequencyCoords frequency_coords(const GridSpec& spec);

/// Unitary 2-D DFT (1/sqrt(nx*ny) in both directions), DC at (0, 0).
ComplexField forward_transform(const ComplexField& field);
ComplexField inverse_transform(const ComplexField& field);

RealImage intensity(const ComplexField& field);

/// Sum of |psi|^2 weighted by the pixel area, in m^2.
double total_power(const ComplexField& field);

/// Periodic shift: out(r + drow, c + dcol) = in(r, c), indices taken mod n.
ComplexField circshift(const ComplexField& field, std::ptrdiff_t drow, std::ptrdiff_t dcol);

/// Largest |a - b| over all elements. Specs must match.
double max_abs_diff(const ComplexField& a, const ComplexField& b);

}  // namespace darkfield
