#pragma once

#include "darkfield/aberrations.hpp"
#include "darkfield/field_grid.hpp"

namespace darkfield {

/// State of the nulling Mach-Zehnder: object-arm optics plus the biased
/// reference arm.
struct InterferometerConfig {
  bool reference_blocked = true;
  double phase_bias = 0.0;  // radians
  AberrationSet aberration_set;
  double reference_amplitude = 1.0;
  double amplification_limit = kDefaultAmplificationLimit;
};

/// Field at the screen: propagate(exit) + reference, where the reference is
/// reference_amplitude * exp(i phase_bias) * psi0, or zero when blocked.
ComplexField screen_field(const ComplexField& exit, const ComplexField& psi0,
                          const InterferometerConfig& cfg);

/// Reference blocked: |propagate(exit)|^2.
RealImage bright_field_image(const ComplexField& exit, const AberrationSet& set,
                             double amplification_limit = kDefaultAmplificationLimit);

/// Reference open with bias pi: |propagate(exit) - psi0|^2. Zero for any set
/// when there is no object.
RealImage dark_field_image(const ComplexField& exit, const ComplexField& psi0,
                           const AberrationSet& set,
                           double amplification_limit = kDefaultAmplificationLimit);

/// Nulled intensity of a unit-modulus phase object: |exp(i phi) - 1|^2.
double analytic_phase_null(double phi);

/// Interferometer settings for the two standard modes.
InterferometerConfig bright_field_config(const AberrationSet& set);
InterferometerConfig dark_field_config(const AberrationSet& set);

}  // namespace darkfield
