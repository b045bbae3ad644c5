#pragma once

#include <cmath>
#include <sstream>

#include "lmeasure/errors.hpp"

namespace lmeasure {

/// A strictly positive, finite real. Converts implicitly to double.
class PositiveReal {
 public:
  explicit PositiveReal(double value, const char* what = "value") : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      std::ostringstream msg;
      msg << what << " must be positive and finite, got " << value;
      throw DomainError(msg.str());
    }
  }

  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_;
};

}  // namespace lmeasure
