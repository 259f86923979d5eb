#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "qesim/angle.hpp"
#include "qesim/linalg.hpp"

namespace qesim::ac {

// Rejected server inputs are retriable: the resource state is unchanged and
// the caller may submit a new family.
class InvalidFamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingAngleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Classical descriptions [rho^theta], one per grid angle.
class StateFamily {
 public:
  void set(Angle theta, ComplexMatrix rho);
  bool complete() const;
  const ComplexMatrix& at(Angle theta) const;  // throws MissingAngleError

  // {theta -> |+_theta><+_theta|}
  static StateFamily plus_states();
  // {theta -> Z(theta) rho_in Z(theta)^dagger} for a fixed rho_in.
  static StateFamily rotations_of(const ComplexMatrix& rho_in);

 private:
  std::array<std::optional<ComplexMatrix>, 8> states_;
};

// Two-outcome measurement descriptions {Pi_theta} with
// Pi_theta + Pi_{theta+pi} = I.
class ProjectorFamily {
 public:
  void set(Angle theta, ComplexMatrix op);
  bool complete() const;
  const ComplexMatrix& at(Angle theta) const;

  // Positive, Hermitian, and antipodal pairs summing to the identity,
  // all within tol. Throws InvalidFamilyError otherwise.
  void validate(double tol = 1e-9) const;

  static ProjectorFamily halves(std::size_t dim);  // Pi_theta = I/2

 private:
  std::array<std::optional<ComplexMatrix>, 8> ops_;
};

// True iff every rho^theta is a valid normalized state and all antipodal
// pair sums agree, within tol.
bool weak_correlation_check(const StateFamily& family, double tol = 1e-9);

}  // namespace qesim::ac
