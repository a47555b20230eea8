#pragma once

#include <stdexcept>
#include <string>

namespace hardcore {

// Input outside the mathematical domain of an operation (non-positive width, d < 1/2, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// A computed object failed one of its structural invariants (symmetry, symplecticity,
// uncertainty relation). Indicates a bug or an unphysical input matrix.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// A sampling grid truncated too much of the wave function.
class CoverageError : public std::runtime_error {
  public:
    CoverageError(const std::string &what, double norm_deficit)
        : std::runtime_error(what), norm_deficit_(norm_deficit) {}

    double norm_deficit() const noexcept { return norm_deficit_; }

  private:
    double norm_deficit_;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace hardcore
