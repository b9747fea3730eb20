#pragma once

#include <stdexcept>
#include <string>

namespace qam {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed dataset, distribution or density text.
class FormatError : public Error {
  public:
    using Error::Error;
};

// Operands whose lengths or dimensions disagree.
class ShapeError : public Error {
  public:
    using Error::Error;
};

// Variable count above the configured lattice cap.
class UnsupportedSizeError : public Error {
  public:
    using Error::Error;
};

// No homogeneous pointer survived, so there is nothing to predict from.
class NoAnalogicalSupportError : public Error {
  public:
    using Error::Error;
};

class InvalidDistributionError : public Error {
  public:
    using Error::Error;
};

}  // namespace qam
