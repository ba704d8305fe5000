#pragma once

#include <stdexcept>
#include <string>

namespace darkfield {

/// Base class for all recoverable failures raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A transfer-function modulus would exceed the configured exponent bound.
class AmplificationError : public Error {
 public:
  AmplificationError(const std::string& what, double kx, double ky)
      : Error(what), kx_(kx), ky_(ky) {}

  double kx() const { return kx_; }
  double ky() const { return ky_; }

 private:
  double kx_;
  double ky_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class RasterError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace darkfield
