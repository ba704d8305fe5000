#include <cstring>
#include <fstream>
#include <iterator>

#include "darkfield/errors.hpp"
#include "darkfield/output.hpp"
#include "darkfield/raster.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace darkfield;
using darkfield::testing::paper_spec;
using darkfield::testing::random_field;
using darkfield::testing::scratch_dir;

namespace {

std::vector<unsigned char> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

GridSpec two_by_two() { return {2, 2, 2e-5, 2e-5, 632.8e-9}; }

}  // namespace

TEST_CASE("quantization rules") {
  const GridSpec s = two_by_two();
  const RealImage ones(s, {1.0, 1.0, 1.0, 1.0});
  CHECK(quantize(ones, Normalization::fixed_range(0.0, 1.0)) == std::vector<std::uint16_t>(4, 65535));
  CHECK(quantize(ones, Normalization::minmax()) == std::vector<std::uint16_t>(4, 0));

  const RealImage clamp(s, {0.0, 2.0, 0.5, 0.25});
  CHECK(quantize(clamp, Normalization::fixed_range(0.0, 1.0)) ==
        std::vector<std::uint16_t>{0, 65535, 32768, 16384});
  CHECK(quantize(clamp, Normalization::minmax()) ==
        std::vector<std::uint16_t>{0, 65535, 16384, 8192});
}

TEST_CASE("intensity PGM and sidecar") {
  const auto dir = scratch_dir("output_intensity");
  const GridSpec s = two_by_two();
  const RealImage img(s, {0.0, 2.0, 0.5, 0.25});
  write_intensity(img, dir / "img.pgm", Normalization::minmax());

  const Raster back = read_raster(dir / "img.pgm");
  CHECK(back.width == 2);
  CHECK(back.maxval == 65535);
  CHECK(back.pixels == std::vector<std::uint16_t>{0, 65535, 16384, 8192});

  const auto meta = read_json(dir / "img.pgm.meta.json");
  CHECK(meta["min"] == 0.0);
  CHECK(meta["max"] == 2.0);
  CHECK(meta["normalization"] == "minmax");
  CHECK(meta["grid"]["nx"] == 2);
  CHECK(meta["wavelength"].get<double>() == 632.8e-9);

  const RealImage flat(s, {3.0, 3.0, 3.0, 3.0});
  write_intensity(flat, dir / "flat.pgm", Normalization::minmax());
  const auto flat_meta = read_json(dir / "flat.pgm.meta.json");
  CHECK(flat_meta["min"] == flat_meta["max"]);
  CHECK(read_raster(dir / "flat.pgm").pixels == std::vector<std::uint16_t>(4, 0));

  CHECK_THROWS_AS(write_intensity(img, dir / "no_such_dir" / "x.pgm", Normalization::minmax()), IoError);
}

TEST_CASE("field dump format") {
  const auto dir = scratch_dir("output_field");
  write_field(plane_wave(two_by_two(), 1.0, 0.0), dir / "ones.f64");
  const auto bytes = slurp(dir / "ones.f64");
  REQUIRE(bytes.size() == 64);
  for (std::size_t i = 0; i < 4; ++i) {
    double re, im;
    std::memcpy(&re, &bytes[16 * i], 8);
    std::memcpy(&im, &bytes[16 * i + 8], 8);
    CHECK(re == 1.0);
    CHECK(im == 0.0);
  }
  // little-endian 1.0 is 00 .. 00 f0 3f
  CHECK(bytes[6] == 0xf0);
  CHECK(bytes[7] == 0x3f);

  write_field(plane_wave(paper_spec(), 1.0, 0.0), dir / "paper.f64");
  const auto meta = read_json(dir / "paper.f64.meta.json");
  CHECK(meta["nx"] == 512);
  CHECK(meta["ny"] == 512);
  CHECK(meta["width_m"].get<double>() == 5.12e-3);
  CHECK(meta["layout"] == "row_major_re_im_f64le");
}

TEST_CASE("field dump round trip is bit exact") {
  const auto dir = scratch_dir("output_roundtrip");
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = random_field(GridSpec{32, 16, 3.2e-4, 1.6e-4, 500e-9}, seed);
    write_field(f, dir / "f.f64");
    const auto g = read_field(dir / "f.f64");
    CHECK(g.spec() == f.spec());
    CHECK(std::memcmp(g.data().data(), f.data().data(), f.data().size_bytes()) == 0);
  }

  {
    std::ofstream(dir / "f.f64", std::ios::binary | std::ios::app) << "x";
  }
  CHECK_THROWS_AS(read_field(dir / "f.f64"), IoError);
  CHECK_THROWS_AS(read_field(dir / "missing.f64"), IoError);
}
