#include "darkfield/aberrations.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "darkfield/errors.hpp"

namespace darkfield {

namespace {

double ipow(double base, int power) {
  double result = 1.0;
  for (int i = 0; i < power; ++i) result *= base;
  return result;
}

}  // namespace

AberrationSet::AberrationSet(const std::vector<AberrationCoefficient>& coefficients) {
  for (const auto& c : coefficients) insert(c);
}

void AberrationSet::insert(const AberrationCoefficient& c) {
  if (c.m < 0 || c.n < 0) {
    throw std::invalid_argument("aberration powers must be non-negative");
  }
  if (!std::isfinite(c.value.real()) || !std::isfinite(c.value.imag())) {
    throw std::invalid_argument("aberration coefficient must be finite");
  }
  if (!terms_.emplace(std::pair{c.m, c.n}, c.value).second) {
    throw std::invalid_argument("duplicate aberration coefficient (" + std::to_string(c.m) + ", " +
                                std::to_string(c.n) + ")");
  }
}

std::vector<AberrationCoefficient> AberrationSet::coefficients() const {
  std::vector<AberrationCoefficient> out;
  out.reserve(terms_.size());
  for (const auto& [key, value] : terms_) out.push_back({key.first, key.second, value});
  return out;
}

Complex AberrationSet::coefficient(int m, int n) const {
  auto it = terms_.find({m, n});
  return it == terms_.end() ? Complex{} : it->second;
}

Complex AberrationSet::exponent(double kx, double ky) const {
  auto term = [&](int m, int n, const Complex& c) { return c * (ipow(kx, m) * ipow(ky, n)); };

  // Mirror pairs (m, n) / (n, m) are summed first, so a set that is symmetric
  // in its coefficients yields E(kx, ky) == E(ky, kx) bit for bit.
  Complex sum{};
  for (const auto& [key, value] : terms_) {
    const auto [m, n] = key;
    if (m < n && terms_.contains({n, m})) continue;
    Complex t = term(m, n, value);
    if (m > n) {
      if (auto mirror = terms_.find({n, m}); mirror != terms_.end()) {
        t = term(n, m, mirror->second) + t;
      }
    }
    sum += t;
  }
  return sum;
}

Complex chi(const AberrationSet& set, double kx, double ky, double amplification_limit) {
  const Complex e = set.exponent(kx, ky);
  const double log_modulus = -e.imag();
  if (!(log_modulus <= amplification_limit)) {
    std::ostringstream msg;
    msg << "transfer function log-modulus " << log_modulus << " exceeds limit "
        << amplification_limit << " at (kx, ky) = (" << kx << ", " << ky << ") rad/m";
    throw AmplificationError(msg.str(), kx, ky);
  }
  return std::polar(std::exp(log_modulus), e.real());
}

AberrationSet defocus_preset(double z, double k0) {
  if (!(k0 > 0.0)) throw std::invalid_argument("defocus: wavenumber must be positive");
  const double c = -z / (2.0 * k0);
  return AberrationSet({{2, 0, c}, {0, 2, c}});
}

AberrationSet tilt_preset(double amplitude, double alpha) {
  if (!(amplitude >= 0.0)) throw std::invalid_argument("tilt: amplitude must be non-negative");
  return AberrationSet({{1, 0, Complex{0.0, amplitude * std::cos(alpha)}},
                        {0, 1, Complex{0.0, amplitude * std::sin(alpha)}}});
}

AberrationSet spherical_preset(double cs, double k0) {
  if (!(k0 > 0.0)) throw std::invalid_argument("spherical: wavenumber must be positive");
  const double c = -cs / (8.0 * k0 * k0 * k0);
  return AberrationSet({{4, 0, c}, {0, 4, c}, {2, 2, 2.0 * c}});
}

AberrationSet add(const AberrationSet& a, const AberrationSet& b) {
  AberrationSet out;
  for (const auto& c : a.coefficients()) {
    out.insert({c.m, c.n, c.value + b.coefficient(c.m, c.n)});
  }
  for (const auto& c : b.coefficients()) {
    if (!a.contains(c.m, c.n)) out.insert(c);
  }
  return out;
}

bool is_coherent(const AberrationSet& set) {
  for (const auto& c : set.coefficients()) {
    if (c.value.imag() != 0.0) return false;
  }
  return true;
}

}  // namespace darkfield
