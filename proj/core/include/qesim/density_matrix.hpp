#pragma once

#include <span>
#include <vector>

#include "qesim/angle.hpp"
#include "qesim/linalg.hpp"
#include "qesim/state_vector.hpp"

namespace qesim {

// Mixed state over n qubits as a dense 2^n x 2^n matrix. Qubit 0 is the most
// significant bit of the row/column index, matching StateVector.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t qubits);

  std::size_t qubit_count() const { return n_; }
  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  ComplexMatrix& matrix() { return m_; }

  // Hermitian within tol, trace one within tol, min eigenvalue >= -tol.
  bool is_valid(double tol = 1e-9) const;
  void validate(double tol = 1e-9) const;  // throws std::invalid_argument

  // rho -> U rho U^dagger with U embedded at the given qubit positions.
  void apply(const ComplexMatrix& u, std::span<const std::size_t> targets);
  void apply(const ComplexMatrix& u, std::size_t target);
  void apply(const ComplexMatrix& u, std::size_t t0, std::size_t t1);

  void tensor_with(const DensityMatrix& other);

  // Probability of the one-qubit outcome (0 => |+_delta>, 1 => |-_delta>).
  double outcome_probability(std::size_t qubit, Angle delta, int outcome) const;
  // Collapse onto the outcome, renormalize, and trace the qubit out.
  double project_and_remove(std::size_t qubit, Angle delta, int outcome);
  double outcome_probability_z(std::size_t qubit, int outcome) const;
  double project_and_remove_z(std::size_t qubit, int outcome);

  // Reduced state on the listed qubits, in the listed order.
  DensityMatrix partial_trace_keep(std::span<const std::size_t> keep) const;

 private:
  std::size_t n_ = 0;
  ComplexMatrix m_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// <psi| rho |psi> for a pure target.
double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi);

// Conjugation of the first subsystem (one qubit) by Z(theta): the upper-right
// block of rho picks up e^{-i theta}, the lower-left e^{+i theta}, and the
// diagonal blocks are untouched. Accepts any even dimension.
ComplexMatrix z_rotate_block_matrix(Angle theta, const ComplexMatrix& rho);
DensityMatrix z_rotate_density(Angle theta, const DensityMatrix& rho);

}  // namespace qesim
