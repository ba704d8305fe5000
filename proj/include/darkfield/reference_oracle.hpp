#pragma once

#include "darkfield/aberrations.hpp"
#include "darkfield/field_grid.hpp"

// Brute-force counterparts of the FFT pipeline, for validation only. They
// share nothing with field_grid's transform path.
namespace darkfield::oracle {

inline constexpr std::size_t kMaxOraclePixels = 4096;

/// Direct double-sum unitary DFT with the same bin order as
/// forward_transform / inverse_transform. Throws std::length_error for grids
/// above kMaxOraclePixels.
ComplexField dft_direct(const ComplexField& field, bool inverse);

/// dft_direct, per-bin chi, inverse dft_direct.
ComplexField propagate_direct(const ComplexField& field, const AberrationSet& set,
                              double amplification_limit = kDefaultAmplificationLimit);

}  // namespace darkfield::oracle
