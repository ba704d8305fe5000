#include "darkfield/output.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>

#include "darkfield/errors.hpp"
#include "darkfield/raster.hpp"

namespace darkfield {

using nlohmann::json;

namespace {

constexpr const char* kFieldLayout = "row_major_re_im_f64le";

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

json grid_json(const GridSpec& spec) {
  return {{"nx", spec.nx}, {"ny", spec.ny}, {"width_m", spec.width}, {"height_m", spec.height}};
}

void put_f64le(char* dst, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) dst[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
}

double get_f64le(const unsigned char* src) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(src[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  auto p = path;
  p += ".meta.json";
  return p;
}

std::vector<std::uint16_t> quantize(const RealImage& image, const Normalization& norm) {
  double lo = norm.lo;
  double hi = norm.hi;
  if (norm.kind == Normalization::Kind::MinMax) {
    lo = image.min();
    hi = image.max();
  }
  std::vector<std::uint16_t> pixels(image.data().size(), 0);
  if (!(hi > lo)) return pixels;
  const double scale = 65535.0 / (hi - lo);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const double v = std::clamp((image.data()[i] - lo) * scale, 0.0, 65535.0);
    pixels[i] = static_cast<std::uint16_t>(std::lround(v));
  }
  return pixels;
}

void write_intensity(const RealImage& image, const std::filesystem::path& path,
                     const Normalization& norm) {
  write_pgm16(path, image.nx(), image.ny(), quantize(image, norm));
  const bool minmax = norm.kind == Normalization::Kind::MinMax;
  json meta = {
      {"min", minmax ? image.min() : norm.lo},
      {"max", minmax ? image.max() : norm.hi},
      {"normalization", minmax ? "minmax" : "fixed_range"},
      {"grid", grid_json(image.spec())},
      {"wavelength", image.spec().wavelength},
      {"data_min", image.min()},
      {"data_max", image.max()},
  };
  write_json(sidecar_path(path), meta);
}

void write_field(const ComplexField& field, const std::filesystem::path& path) {
  const auto data = field.data();
  std::vector<char> payload(data.size() * 16);
  for (std::size_t i = 0; i < data.size(); ++i) {
    put_f64le(&payload[16 * i], data[i].real());
    put_f64le(&payload[16 * i + 8], data[i].imag());
  }
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw IoError("failed writing " + path.string());
  }
  const GridSpec& spec = field.spec();
  json meta = grid_json(spec);
  meta["wavelength_m"] = spec.wavelength;
  meta["layout"] = kFieldLayout;
  write_json(sidecar_path(path), meta);
}

ComplexField read_field(const std::filesystem::path& path) {
  json meta;
  {
    std::ifstream in(sidecar_path(path));
    if (!in) throw IoError("missing sidecar " + sidecar_path(path).string());
    try {
      meta = json::parse(in);
    } catch (const json::exception& e) {
      throw IoError(sidecar_path(path).string() + ": " + e.what());
    }
  }
  GridSpec spec;
  try {
    if (meta.at("layout").get<std::string>() != kFieldLayout) {
      throw IoError(path.string() + ": unsupported layout");
    }
    spec.nx = meta.at("nx").get<std::size_t>();
    spec.ny = meta.at("ny").get<std::size_t>();
    spec.width = meta.at("width_m").get<double>();
    spec.height = meta.at("height_m").get<double>();
    spec.wavelength = meta.at("wavelength_m").get<double>();
    spec.validate();
  } catch (const json::exception& e) {
    throw IoError(sidecar_path(path).string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(sidecar_path(path).string() + ": " + e.what());
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in), {}};
  if (bytes.size() != spec.size() * 16) {
    throw IoError(path.string() + ": payload size does not match sidecar grid");
  }
  ComplexBuffer data(spec.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = {get_f64le(&bytes[16 * i]), get_f64le(&bytes[16 * i + 8])};
  }
  try {
    return ComplexField(spec, std::move(data));
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace darkfield
