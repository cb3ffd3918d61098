#pragma once

#include <stdexcept>
#include <string>

namespace bhg {

/// Input outside the physical or mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The requested waist is tighter than the transverse-momentum budget allows.
class WaistBelowCritical : public DomainError {
public:
  WaistBelowCritical(double waist_pm, double critical_waist_pm);

  double waist() const noexcept { return waist_; }
  double critical_waist() const noexcept { return critical_waist_; }

private:
  double waist_;
  double critical_waist_;
};

/// A numerical procedure (quadrature, root solve) did not meet its tolerance.
class NumericalFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace bhg
