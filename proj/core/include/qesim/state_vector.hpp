#pragma once

#include <span>
#include <vector>

#include "qesim/angle.hpp"
#include "qesim/linalg.hpp"

namespace qesim {

// Pure n-qubit state. Qubit 0 is the most significant bit of the basis
// index, so kron(A, B) tensors A's qubits before B's.
class StateVector {
 public:
  explicit StateVector(std::size_t qubits);  // |0...0>
  StateVector(std::size_t qubits, std::vector<cplx> amplitudes);

  static StateVector plus_state(Angle theta = Angle{});  // single qubit |+_theta>
  static StateVector computational(std::size_t qubits, std::size_t basis_index);

  std::size_t qubit_count() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  cplx amplitude(std::size_t i) const { return amps_[i]; }
  std::span<const cplx> amplitudes() const { return amps_; }

  double norm() const;
  void normalize();

  // Conjugate by a k-qubit unitary embedded at the given qubit positions.
  void apply(const ComplexMatrix& u, std::span<const std::size_t> targets);
  void apply(const ComplexMatrix& u, std::size_t target);
  void apply(const ComplexMatrix& u, std::size_t t0, std::size_t t1);

  // Appends the other system's qubits after this one's.
  void tensor_with(const StateVector& other);

  // Probability of |outcome> (0 => |+_delta>, 1 => |-_delta>) on one qubit.
  double outcome_probability(std::size_t qubit, Angle delta, int outcome) const;

  // Collapse onto the given outcome and remove the measured qubit.
  // Returns the outcome probability; throws if it is numerically zero.
  double project_and_remove(std::size_t qubit, Angle delta, int outcome);

  // Same, in the computational basis.
  double project_and_remove_z(std::size_t qubit, int outcome);

  ComplexMatrix outer_product() const;  // |psi><psi|

 private:
  std::size_t n_;
  std::vector<cplx> amps_;

  std::size_t bit_shift(std::size_t qubit) const { return n_ - 1 - qubit; }
};

}  // namespace qesim
