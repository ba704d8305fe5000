#pragma once

#include "darkfield/aberrations.hpp"
#include "darkfield/field_grid.hpp"

namespace darkfield {

/// Transfer function chi sampled on the DFT bins of one grid.
///
/// Building it evaluates the amplification guard over every bin, so a
/// constructed TransferFunction is always safe to apply.
class TransferFunction {
 public:
  TransferFunction(const GridSpec& spec, const AberrationSet& set,
                   double amplification_limit = kDefaultAmplificationLimit);

  const GridSpec& spec() const { return values_.spec(); }
  /// Bin-ordered samples; element (row, col) is chi(kx[col], ky[row]).
  const ComplexField& values() const { return values_; }
  Complex at_dc() const { return values_(0, 0); }
  double max_modulus() const;

  /// Multiply the spectrum of `field` by chi and transform back.
  ComplexField apply(const ComplexField& field) const;

 private:
  ComplexField values_;
};

/// Output of the LSI system described by `set` for input `field`.
ComplexField propagate(const ComplexField& field, const AberrationSet& set,
                       double amplification_limit = kDefaultAmplificationLimit);

/// Propagates only the scattered part exit - psi0.
ComplexField propagate_scattered(const ComplexField& exit, const ComplexField& psi0,
                                 const AberrationSet& set,
                                 double amplification_limit = kDefaultAmplificationLimit);

/// Real-space propagator: the inverse transform of the sampled chi grid.
/// With the unitary convention, propagate(f) is the circular convolution of f
/// with green_function / sqrt(nx * ny).
ComplexField green_function(const GridSpec& spec, const AberrationSet& set,
                            double amplification_limit = kDefaultAmplificationLimit);

}  // namespace darkfield
