#include <cmath>
#include <numbers>

#include "darkfield/field_grid.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace darkfield;
using darkfield::testing::paper_spec;
using darkfield::testing::random_field;

namespace {

GridSpec spec4() { return {4, 4, 4.0, 4.0, 1e-6}; }

}  // namespace

TEST_CASE("grid spec validation") {
  CHECK_NOTHROW(spec4().validate());
  CHECK_THROWS_AS((GridSpec{3, 4, 1.0, 1.0, 1e-6}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{0, 4, 1.0, 1.0, 1e-6}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{4, 4, -1.0, 1.0, 1e-6}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{4, 4, 1.0, 1.0, 0.0}.validate()), std::invalid_argument);

  const auto p = paper_spec();
  CHECK(p.dx() == doctest::Approx(1e-5).epsilon(1e-14));
  CHECK(p.wavenumber() == doctest::Approx(9929180.321080256).epsilon(1e-14));
}

TEST_CASE("complex field rejects bad data") {
  CHECK_THROWS_AS(ComplexField(spec4(), ComplexBuffer(15)), std::invalid_argument);
  ComplexBuffer bad(16);
  bad[3] = {std::nan(""), 0.0};
  CHECK_THROWS_AS(ComplexField(spec4(), bad), std::invalid_argument);

  ComplexField a(spec4());
  ComplexField b(GridSpec{4, 4, 8.0, 4.0, 1e-6});
  CHECK_THROWS_AS(a += b, std::invalid_argument);
}

TEST_CASE("plane wave") {
  const auto unit = plane_wave(spec4(), 1.0, 0.0);
  for (const auto& v : unit.data()) CHECK(v == Complex{1.0, 0.0});
  const auto flipped = plane_wave(spec4(), 1.0, std::numbers::pi);
  for (const auto& v : flipped.data()) {
    CHECK(v.real() == -1.0);
    CHECK(std::abs(v.imag()) < 1e-15);
  }
  CHECK(total_power(plane_wave(paper_spec(), 1.0, 0.0)) == doctest::Approx(2.62144e-5).epsilon(1e-13));
  CHECK_THROWS_AS(plane_wave(spec4(), -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("frequency coordinates follow DFT bin order") {
  const auto c4 = frequency_coords(spec4());
  const double pi = std::numbers::pi;
  CHECK(c4.kx[0] == 0.0);
  CHECK(c4.kx[1] == doctest::Approx(pi / 2));
  CHECK(c4.kx[2] == doctest::Approx(-pi));
  CHECK(c4.kx[3] == doctest::Approx(-pi / 2));

  const auto c2 = frequency_coords(GridSpec{2, 2, 1.0, 1.0, 1e-6});
  CHECK(c2.kx[0] == 0.0);
  CHECK(c2.kx[1] == doctest::Approx(-2 * pi));

  const auto cp = frequency_coords(paper_spec());
  CHECK(cp.kx[1] == doctest::Approx(1227.1846303085129).epsilon(1e-14));
  CHECK(cp.kx[256] == doctest::Approx(-314159.2653589793).epsilon(1e-14));
  double kmax = 0.0;
  for (double k : cp.kx) kmax = std::max(kmax, std::abs(k));
  CHECK(kmax == doctest::Approx(314159.2653589793).epsilon(1e-14));

  // odd symmetry away from the Nyquist bin
  for (std::size_t i = 1; i < 256; ++i) CHECK(cp.kx[512 - i] == -cp.kx[i]);
}

TEST_CASE("forward transform closed forms") {
  const auto ones = forward_transform(plane_wave(spec4(), 1.0, 0.0));
  CHECK(std::abs(ones(0, 0) - Complex{4.0, 0.0}) < 1e-15);
  for (std::size_t i = 1; i < 16; ++i) CHECK(std::abs(ones.data()[i]) < 1e-15);

  ComplexField impulse(spec4());
  impulse(0, 0) = 1.0;
  const auto flat = forward_transform(impulse);
  for (const auto& v : flat.data()) CHECK(std::abs(v - 0.25) < 1e-15);

  // e^{-2 pi i (u r + v c) / 4}: a single off-axis exponential lands in one bin
  ComplexField wave(spec4());
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      wave(r, c) = std::polar(1.0, 2 * std::numbers::pi * (1.0 * r + 3.0 * c) / 4.0);
  const auto spectrum = forward_transform(wave);
  CHECK(std::abs(spectrum(1, 3) - 4.0) < 1e-14);
}

TEST_CASE("transform round trip, Parseval and linearity") {
  const GridSpec s32{32, 32, 1e-3, 1e-3, 500e-9};
  const auto f = random_field(s32, 7);
  CHECK(max_abs_diff(inverse_transform(forward_transform(f)), f) < 1e-12);

  const auto big = random_field(GridSpec{1024, 1024, 1e-2, 1e-2, 500e-9}, 11);
  CHECK(max_abs_diff(inverse_transform(forward_transform(big)), big) < 1e-12);

  const auto g = random_field(GridSpec{64, 32, 1e-3, 5e-4, 500e-9}, 3);
  const double p0 = total_power(g);
  CHECK(std::abs(total_power(forward_transform(g)) - p0) / p0 < 1e-12);

  const auto h = random_field(s32, 8);
  const Complex a{0.3, -1.2}, b{-2.0, 0.5};
  const auto lhs = forward_transform(f * a + h * b);
  const auto rhs = forward_transform(f) * a + forward_transform(h) * b;
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("non-square grids keep row-major orientation") {
  const GridSpec s{8, 4, 8.0, 4.0, 1e-6};  // 8 columns, 4 rows
  ComplexField wave(s);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 8; ++c) wave(r, c) = std::polar(1.0, 2 * std::numbers::pi * c / 8.0);
  const auto spectrum = forward_transform(wave);
  CHECK(std::abs(spectrum(0, 1) - std::sqrt(32.0)) < 1e-13);
}

TEST_CASE("intensity and power") {
  const auto uniform = intensity(plane_wave(spec4(), 1.0, 0.7));
  for (double v : uniform.data()) CHECK(v == doctest::Approx(1.0));
  ComplexField f(spec4());
  f(1, 2) = {3.0, 4.0};
  const auto img = intensity(f);
  CHECK(img(1, 2) == 25.0);
  CHECK(img(0, 0) == 0.0);
  CHECK(total_power(ComplexField(spec4())) == 0.0);
}

TEST_CASE("circshift wraps on the torus") {
  ComplexField f(spec4());
  f(3, 3) = 1.0;
  const auto g = circshift(f, 1, 2);
  CHECK(g(0, 1) == Complex{1.0, 0.0});
  CHECK(max_abs_diff(circshift(g, -1, -2), f) == 0.0);
}
