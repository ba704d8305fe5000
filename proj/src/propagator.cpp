#include "darkfield/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace darkfield {

namespace {

ComplexField sample_chi(const GridSpec& spec, const AberrationSet& set, double limit) {
  const auto coords = frequency_coords(spec);
  ComplexField grid(spec);
  for (std::size_t row = 0; row < spec.ny; ++row) {
    for (std::size_t col = 0; col < spec.nx; ++col) {
      grid(row, col) = chi(set, coords.kx[col], coords.ky[row], limit);
    }
  }
  return grid;
}

}  // namespace

TransferFunction::TransferFunction(const GridSpec& spec, const AberrationSet& set,
                                   double amplification_limit)
    : values_(sample_chi(spec, set, amplification_limit)) {}

double TransferFunction::max_modulus() const {
  double worst = 0.0;
  for (const auto& v : values_.data()) worst = std::max(worst, std::abs(v));
  return worst;
}

ComplexField TransferFunction::apply(const ComplexField& field) const {
  if (!(field.spec() == spec())) {
    throw std::invalid_argument("transfer function grid does not match field grid");
  }
  ComplexField spectrum = forward_transform(field);
  spectrum *= values_;
  return inverse_transform(spectrum);
}

ComplexField propagate(const ComplexField& field, const AberrationSet& set,
                       double amplification_limit) {
  return TransferFunction(field.spec(), set, amplification_limit).apply(field);
}

ComplexField propagate_scattered(const ComplexField& exit, const ComplexField& psi0,
                                 const AberrationSet& set, double amplification_limit) {
  return propagate(exit - psi0, set, amplification_limit);
}

ComplexField green_function(const GridSpec& spec, const AberrationSet& set,
                            double amplification_limit) {
  return inverse_transform(TransferFunction(spec, set, amplification_limit).values());
}

}  // namespace darkfield
