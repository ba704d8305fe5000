#include "darkfield/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>

#include "darkfield/errors.hpp"

namespace darkfield {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

// Leading number of `text`; the unparsed tail is returned through `rest`.
double leading_number(std::string_view text, std::string_view& rest) {
  text = trim(text);
  double value = 0.0;
  const char* begin = text.data();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto [end, ec] = std::from_chars(begin, text.data() + text.size(), value);
  if (ec != std::errc{} || !std::isfinite(value)) {
    throw ConfigError("expected a number in '" + std::string(text) + "'");
  }
  rest = trim(std::string_view(end, static_cast<std::size_t>(text.data() + text.size() - end)));
  return value;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing '" + key + "' in " + where);
  return obj.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(what + " must be finite");
  return d;
}

std::size_t pixel_count(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ConfigError(what + " must be a positive integer");
  }
  return v.get<std::size_t>();
}

AberrationEntry parse_aberration(const json& e, std::size_t index) {
  const std::string where = "aberrations[" + std::to_string(index) + "]";
  const json& kind_value = require(e, "kind", where);
  if (!kind_value.is_string()) throw ConfigError(where + ".kind must be a string");
  const auto kind = kind_value.get<std::string>();

  if (kind == "defocus") {
    reject_unknown_keys(e, {"kind", "z"}, where);
    return DefocusEntry{parse_length(require(e, "z", where))};
  }
  if (kind == "tilt") {
    reject_unknown_keys(e, {"kind", "amplitude", "alpha"}, where);
    TiltEntry t{parse_length(require(e, "amplitude", where)), parse_angle(require(e, "alpha", where))};
    if (t.amplitude < 0.0) throw ConfigError(where + ": tilt amplitude must be non-negative");
    return t;
  }
  if (kind == "spherical") {
    reject_unknown_keys(e, {"kind", "cs"}, where);
    return SphericalEntry{parse_length(require(e, "cs", where))};
  }
  if (kind == "raw") {
    reject_unknown_keys(e, {"kind", "m", "n", "re", "im"}, where);
    const json& m = require(e, "m", where);
    const json& n = require(e, "n", where);
    if (!m.is_number_integer() || !n.is_number_integer() || m.get<long long>() < 0 ||
        n.get<long long>() < 0 || m.get<long long>() > 64 || n.get<long long>() > 64) {
      throw ConfigError(where + ": m and n must be integers in [0, 64]");
    }
    const double re = e.contains("re") ? number(e.at("re"), where + ".re") : 0.0;
    const double im = e.contains("im") ? number(e.at("im"), where + ".im") : 0.0;
    return RawEntry{m.get<int>(), n.get<int>(), Complex{re, im}};
  }
  throw ConfigError(where + ": unknown aberration kind '" + kind + "'");
}

Normalization parse_normalization(const json& v) {
  if (v.is_string() && v.get<std::string>() == "minmax") return Normalization::minmax();
  if (v.is_object() && v.size() == 1 && v.contains("fixed_range")) {
    const json& range = v.at("fixed_range");
    if (!range.is_array() || range.size() != 2) {
      throw ConfigError("fixed_range must be a two-element array");
    }
    const double lo = number(range[0], "fixed_range[0]");
    const double hi = number(range[1], "fixed_range[1]");
    if (!(lo < hi)) throw ConfigError("fixed_range requires lo < hi");
    return Normalization::fixed_range(lo, hi);
  }
  throw ConfigError(R"(normalization must be "minmax" or {"fixed_range": [lo, hi]})");
}

}  // namespace

double parse_length(std::string_view text) {
  std::string_view unit;
  const double value = leading_number(text, unit);
  if (unit.empty() || unit == "m") return value;
  if (unit == "mm") return value * 1e-3;
  if (unit == "um" || unit == "µm" || unit == "μm") return value * 1e-6;
  if (unit == "nm") return value * 1e-9;
  throw ConfigError("unknown length unit '" + std::string(unit) + "' in '" + std::string(text) + "'");
}

double parse_length(const json& value) {
  if (value.is_number()) return number(value, "length");
  if (value.is_string()) return parse_length(std::string_view(value.get_ref<const std::string&>()));
  throw ConfigError("length must be a number or a unit-suffixed string");
}

double parse_angle(const json& value) {
  if (value.is_number()) return number(value, "angle");
  if (value.is_string()) {
    std::string_view rest;
    const std::string& text = value.get_ref<const std::string&>();
    if (trim(text) == "pi") return std::numbers::pi;
    const double v = leading_number(text, rest);
    if (rest.empty()) return v;
    if (rest == "pi") return v * std::numbers::pi;
    throw ConfigError("cannot parse angle '" + text + "'");
  }
  throw ConfigError("angle must be a number or a string like \"3.6pi\"");
}

SimulationConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  reject_unknown_keys(doc,
                      {"grid", "wavelength", "object", "contrast", "aberrations", "mode",
                       "phase_bias", "reference_blocked", "reference_amplitude",
                       "fresnel_feature_size", "amplification_limit", "outputs"},
                      "config");
  SimulationConfig cfg;

  const json& grid = require(doc, "grid", "config");
  reject_unknown_keys(grid, {"nx", "ny", "width", "height"}, "grid");
  cfg.grid.nx = pixel_count(require(grid, "nx", "grid"), "grid.nx");
  cfg.grid.ny = pixel_count(require(grid, "ny", "grid"), "grid.ny");
  cfg.grid.width = parse_length(require(grid, "width", "grid"));
  cfg.grid.height = parse_length(require(grid, "height", "grid"));
  cfg.grid.wavelength = parse_length(require(doc, "wavelength", "config"));
  try {
    cfg.grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }

  if (doc.contains("object")) {
    const json& obj = doc.at("object");
    reject_unknown_keys(obj, {"raster_path", "threshold", "smooth_fwhm_px"}, "object");
    if (obj.contains("raster_path") && !obj.at("raster_path").is_null()) {
      if (!obj.at("raster_path").is_string()) throw ConfigError("object.raster_path must be a string");
      std::filesystem::path p = obj.at("raster_path").get<std::string>();
      cfg.object.raster_path = p.is_relative() ? base_dir / p : p;
    }
    if (obj.contains("threshold")) cfg.object.threshold = number(obj.at("threshold"), "object.threshold");
    if (obj.contains("smooth_fwhm_px")) {
      cfg.object.smooth_fwhm_px = number(obj.at("smooth_fwhm_px"), "object.smooth_fwhm_px");
    }
    if (!(cfg.object.threshold > 0.0 && cfg.object.threshold < 1.0)) {
      throw ConfigError("object.threshold must lie in (0, 1)");
    }
    if (cfg.object.smooth_fwhm_px < 0.0) throw ConfigError("object.smooth_fwhm_px must be >= 0");
  }

  if (doc.contains("contrast")) {
    const json& c = doc.at("contrast");
    reject_unknown_keys(c, {"min_intensity", "max_phase"}, "contrast");
    if (c.contains("min_intensity")) {
      cfg.contrast.min_intensity = number(c.at("min_intensity"), "contrast.min_intensity");
    }
    if (c.contains("max_phase")) cfg.contrast.max_phase = parse_angle(c.at("max_phase"));
    if (!(cfg.contrast.min_intensity > 0.0 && cfg.contrast.min_intensity <= 1.0)) {
      throw ConfigError("contrast.min_intensity must lie in (0, 1]");
    }
  }

  if (doc.contains("aberrations")) {
    const json& list = doc.at("aberrations");
    if (!list.is_array()) throw ConfigError("aberrations must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      cfg.aberrations.push_back(parse_aberration(list[i], i));
    }
  }

  const json& mode = require(doc, "mode", "config");
  const std::string mode_name = mode.is_string() ? mode.get<std::string>() : "";
  if (mode_name == "bright") {
    cfg.mode = ImagingMode::Bright;
  } else if (mode_name == "dark") {
    cfg.mode = ImagingMode::Dark;
  } else if (mode_name == "custom") {
    cfg.mode = ImagingMode::Custom;
  } else {
    throw ConfigError("mode must be one of bright, dark, custom");
  }
  const bool has_custom_keys = doc.contains("phase_bias") || doc.contains("reference_blocked");
  if (cfg.mode == ImagingMode::Custom) {
    cfg.phase_bias = parse_angle(require(doc, "phase_bias", "config"));
    const json& blocked = require(doc, "reference_blocked", "config");
    if (!blocked.is_boolean()) throw ConfigError("reference_blocked must be a boolean");
    cfg.reference_blocked = blocked.get<bool>();
  } else if (has_custom_keys) {
    throw ConfigError("phase_bias and reference_blocked are only valid in custom mode");
  } else {
    cfg.reference_blocked = cfg.mode == ImagingMode::Bright;
    cfg.phase_bias = cfg.mode == ImagingMode::Dark ? std::numbers::pi : 0.0;
  }
  if (doc.contains("reference_amplitude")) {
    cfg.reference_amplitude = number(doc.at("reference_amplitude"), "reference_amplitude");
    if (cfg.reference_amplitude < 0.0) throw ConfigError("reference_amplitude must be >= 0");
  }
  if (doc.contains("fresnel_feature_size")) {
    cfg.fresnel_feature_size = parse_length(doc.at("fresnel_feature_size"));
    if (!(*cfg.fresnel_feature_size > 0.0)) throw ConfigError("fresnel_feature_size must be > 0");
  }
  if (doc.contains("amplification_limit")) {
    cfg.amplification_limit = number(doc.at("amplification_limit"), "amplification_limit");
  }

  const json& out = require(doc, "outputs", "config");
  reject_unknown_keys(out, {"intensity_path", "field_path", "normalization"}, "outputs");
  const json& ipath = require(out, "intensity_path", "outputs");
  if (!ipath.is_string()) throw ConfigError("outputs.intensity_path must be a string");
  cfg.outputs.intensity_path = ipath.get<std::string>();
  if (out.contains("field_path") && !out.at("field_path").is_null()) {
    if (!out.at("field_path").is_string()) throw ConfigError("outputs.field_path must be a string");
    cfg.outputs.field_path = out.at("field_path").get<std::string>();
  }
  if (out.contains("normalization")) cfg.outputs.normalization = parse_normalization(out.at("normalization"));

  return cfg;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

AberrationSet build_aberration_set(const SimulationConfig& config) {
  const double k0 = config.grid.wavenumber();
  AberrationSet total;
  for (const auto& entry : config.aberrations) {
    const AberrationSet term = std::visit(
        [k0](const auto& e) -> AberrationSet {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, DefocusEntry>) return defocus_preset(e.z, k0);
          if constexpr (std::is_same_v<T, TiltEntry>) return tilt_preset(e.amplitude, e.alpha);
          if constexpr (std::is_same_v<T, SphericalEntry>) return spherical_preset(e.cs, k0);
          if constexpr (std::is_same_v<T, RawEntry>) return AberrationSet({{e.m, e.n, e.value}});
        },
        entry);
    total = add(total, term);
  }
  return total;
}

Normalization effective_normalization(const SimulationConfig& config) {
  if (config.outputs.normalization) return *config.outputs.normalization;
  if (config.mode == ImagingMode::Bright && config.aberrations.empty()) {
    return Normalization::fixed_range(0.99, 1.01);
  }
  return Normalization::minmax();
}

std::string_view to_string(ImagingMode mode) {
  switch (mode) {
    case ImagingMode::Bright:
      return "bright";
    case ImagingMode::Dark:
      return "dark";
    case ImagingMode::Custom:
      return "custom";
  }
  return "unknown";
}

}  // namespace darkfield
