#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "darkfield/config.hpp"
#include "darkfield/field_grid.hpp"

namespace darkfield {

/// Maps intensities onto [0, 65535] under `norm`, clamping out-of-range
/// values. A degenerate min-max range maps every pixel to 0.
std::vector<std::uint16_t> quantize(const RealImage& image, const Normalization& norm);

/// 16-bit PGM plus `<path>.meta.json` recording the mapped range, the
/// normalization kind, the grid and the wavelength. Throws IoError.
void write_intensity(const RealImage& image, const std::filesystem::path& path,
                     const Normalization& norm);

/// Raw little-endian f64 (re, im) pairs, row-major, plus `<path>.meta.json`.
/// Throws IoError.
void write_field(const ComplexField& field, const std::filesystem::path& path);

/// Inverse of write_field; bit-exact. Throws IoError.
ComplexField read_field(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace darkfield
