#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "darkfield/field_grid.hpp"

namespace darkfield {

/// Default bound on the log-modulus of the transfer function. exp(50) ~ 5e21.
inline constexpr double kDefaultAmplificationLimit = 50.0;

/// One term C_mn * kx^m * ky^n of the transfer-function exponent. The real
/// part of `value` is the coherent aberration, the imaginary part the
/// incoherent one. Units are m^(m+n).
struct AberrationCoefficient {
  int m = 0;
  int n = 0;
  Complex value;
};

/// Sparse set of aberration coefficients keyed by monomial powers (m, n).
/// Immutable once built; the only mutators are construction and insert().
class AberrationSet {
 public:
  AberrationSet() = default;
  /// Throws std::invalid_argument on negative powers, non-finite values, or a
  /// repeated (m, n) pair.
  explicit AberrationSet(const std::vector<AberrationCoefficient>& coefficients);

  void insert(const AberrationCoefficient& coefficient);

  /// Coefficients ordered by (m, n).
  std::vector<AberrationCoefficient> coefficients() const;
  /// Zero when (m, n) is absent.
  Complex coefficient(int m, int n) const;
  bool contains(int m, int n) const { return terms_.contains({m, n}); }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Sum of C_mn * kx^m * ky^n.
  Complex exponent(double kx, double ky) const;

 private:
  std::map<std::pair<int, int>, Complex> terms_;
};

/// exp(i * exponent). Throws AmplificationError when the log-modulus
/// -Im(exponent) exceeds `amplification_limit`.
Complex chi(const AberrationSet& set, double kx, double ky,
            double amplification_limit = kDefaultAmplificationLimit);

/// Fresnel free-space propagation over distance z (paraxial):
/// C20 = C02 = -z / (2 k0).
AberrationSet defocus_preset(double z, double k0);

/// Incoherent tilt of strength A_t along the in-plane direction alpha:
/// C10 = i A_t cos(alpha), C01 = i A_t sin(alpha).
AberrationSet tilt_preset(double amplitude, double alpha);

/// Third-order spherical aberration: C40 = C04 = C22 / 2 = -Cs / (8 k0^3).
AberrationSet spherical_preset(double cs, double k0);

/// Coefficient-wise sum. Transfer functions multiply under this operation.
AberrationSet add(const AberrationSet& a, const AberrationSet& b);

/// True when every coefficient is real, i.e. |chi| == 1 everywhere.
bool is_coherent(const AberrationSet& set);

}  // namespace darkfield
