#include <cmath>
#include <numbers>

#include "darkfield/errors.hpp"
#include "darkfield/propagator.hpp"
#include "darkfield/reference_oracle.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace darkfield;
using darkfield::testing::paper_spec;
using darkfield::testing::random_field;
using darkfield::testing::small_spec;

namespace {

const double kK0 = paper_spec().wavenumber();

AberrationSet defocus10() { return defocus_preset(10e-3, kK0); }
AberrationSet tilt3() { return tilt_preset(3e-6, std::numbers::pi / 2); }
AberrationSet spherical5() { return spherical_preset(5e-3, kK0); }

ComplexField rotate90(const ComplexField& f) {
  // (r, c) -> (c, -r) about pixel (0, 0) on the torus; square grids only.
  const std::size_t n = f.nx();
  ComplexField out(f.spec());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(c, (n - r) % n) = f(r, c);
  return out;
}

}  // namespace

TEST_CASE("plane waves pass through any preset unchanged") {
  const auto wave = plane_wave(paper_spec(), 1.0, 0.3);
  for (const auto& set : {defocus10(), tilt3(), spherical5()}) {
    CHECK(max_abs_diff(propagate(wave, set), wave) < 1e-13);
  }
}

TEST_CASE("empty set is the identity") {
  const auto f = random_field(small_spec(64), 1);
  CHECK(max_abs_diff(propagate(f, AberrationSet{}), f) < 1e-13);
}

TEST_CASE("defocus on 16x16 matches the direct oracle") {
  const auto f = random_field(small_spec(16), 2024);
  CHECK(max_abs_diff(propagate(f, defocus10()), oracle::propagate_direct(f, defocus10())) < 1e-10);
}

TEST_CASE("propagate_scattered") {
  const auto spec = small_spec(32);
  const auto psi0 = plane_wave(spec, 1.0, 0.0);
  for (const auto& set : {defocus10(), tilt3(), spherical5()}) {
    CHECK(max_abs_diff(propagate_scattered(psi0, psi0, set), ComplexField(spec)) < 1e-13);
  }

  const auto e = random_field(spec, 3);
  CHECK(max_abs_diff(propagate_scattered(e, psi0, AberrationSet{}), e - psi0) < 1e-13);

  for (const auto& set : {defocus10(), tilt3(), spherical5()}) {
    const auto two_step = propagate(e, set) - psi0;
    CHECK(max_abs_diff(propagate_scattered(e, psi0, set), two_step) < 1e-12);
  }

  ComplexField other(GridSpec{32, 32, 1e-3, 1e-3, 632.8e-9});
  CHECK_THROWS_AS(propagate_scattered(e, other, defocus10()), std::invalid_argument);
}

TEST_CASE("green function") {
  const auto spec = small_spec(32);
  const double root_n = std::sqrt(static_cast<double>(spec.size()));

  const auto delta = green_function(spec, AberrationSet{});
  CHECK(std::abs(delta(0, 0) - root_n) < 1e-12);
  double off = 0.0;
  for (std::size_t i = 1; i < spec.size(); ++i) off = std::max(off, std::abs(delta.data()[i]));
  CHECK(off < 1e-12);

  for (const auto& set : {defocus10(), spherical5()}) {
    const auto g = green_function(spec, set);
    CHECK(max_abs_diff(rotate90(g), g) < 1e-12);
  }

  ComplexField impulse(spec);
  impulse(0, 0) = 1.0;
  for (const auto& set : {defocus10(), tilt3(), spherical5()}) {
    const auto g = green_function(spec, set) * Complex{1.0 / root_n, 0.0};
    CHECK(max_abs_diff(propagate(impulse, set), g) < 1e-12);
  }
}

TEST_CASE("propagation is a circular convolution with the green function") {
  const auto spec = small_spec(16);
  const auto f = random_field(spec, 77);
  const double root_n = std::sqrt(static_cast<double>(spec.size()));
  const auto set = add(defocus10(), tilt3());
  const auto g = green_function(spec, set);

  ComplexField conv(spec);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) {
      Complex acc{};
      for (std::size_t rr = 0; rr < 16; ++rr)
        for (std::size_t cc = 0; cc < 16; ++cc) acc += f(rr, cc) * g((r + 16 - rr) % 16, (c + 16 - cc) % 16);
      conv(r, c) = acc / root_n;
    }
  CHECK(max_abs_diff(propagate(f, set), conv) < 1e-11);
}

TEST_CASE("linearity and shift invariance") {
  const auto spec = small_spec(64);
  const auto f = random_field(spec, 10);
  const auto g = random_field(spec, 11);
  const Complex a{0.7, 0.2}, b{-1.5, 3.0};
  for (const auto& set : {defocus10(), tilt3(), spherical5()}) {
    const auto lhs = propagate(f * a + g * b, set);
    const auto rhs = propagate(f, set) * a + propagate(g, set) * b;
    CHECK(max_abs_diff(lhs, rhs) < 1e-11);

    for (auto [dr, dc] : {std::pair{3, -5}, {-17, 31}, {64, 1}}) {
      CHECK(max_abs_diff(propagate(circshift(f, dr, dc), set), circshift(propagate(f, set), dr, dc)) <
            1e-11);
    }
  }
}

TEST_CASE("sequential propagation equals propagation under the summed set") {
  const auto f = random_field(small_spec(64), 12);
  const auto twice = propagate(propagate(f, defocus_preset(4e-3, kK0)), defocus_preset(6e-3, kK0));
  CHECK(max_abs_diff(twice, propagate(f, defocus10())) < 1e-10);

  const auto seq = propagate(propagate(f, tilt3()), spherical5());
  CHECK(max_abs_diff(seq, propagate(f, add(tilt3(), spherical5()))) < 1e-10);
}

TEST_CASE("coherent sets conserve power, incoherent ones do not") {
  const auto f = random_field(small_spec(128), 13);
  const double p0 = total_power(f);
  for (const auto& set : {defocus10(), spherical5()}) {
    CHECK(std::abs(total_power(propagate(f, set)) - p0) / p0 < 1e-12);
  }
  CHECK(std::abs(total_power(propagate(f, tilt3())) - p0) / p0 > 1e-3);
}

TEST_CASE("transfer function reuse and guard") {
  const auto spec = small_spec(32);
  const TransferFunction tf(spec, tilt3());
  CHECK(tf.at_dc() == Complex{1.0, 0.0});
  CHECK(tf.max_modulus() == doctest::Approx(2.566332395208135).epsilon(1e-12));

  const auto f = random_field(spec, 14);
  CHECK(max_abs_diff(tf.apply(f), propagate(f, tilt3())) == 0.0);
  CHECK_THROWS_AS(tf.apply(random_field(small_spec(16), 1)), std::invalid_argument);

  CHECK_THROWS_AS(TransferFunction(paper_spec(), tilt_preset(1.0, std::numbers::pi / 2)),
                  AmplificationError);
  CHECK_THROWS_AS(propagate(f, tilt_preset(1e-3, 0.0)), AmplificationError);
  CHECK_THROWS_AS(green_function(spec, tilt_preset(1e-3, 0.0)), AmplificationError);
}
