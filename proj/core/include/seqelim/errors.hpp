#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace seqelim {

// Argument outside the mathematical domain of a function (u outside (0,1), x <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Closed form is 0/0 or divergent at this point (equal means in a two-arm game).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Result would over- or underflow a double.
class SaturationError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Invalid configuration. Carries every violated field, not only the first one.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Calibration target cannot be met within the threshold search range.
class UnreachableTargetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seqelim
