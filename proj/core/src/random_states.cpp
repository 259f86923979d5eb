#include "qesim/random_states.hpp"

#include <cmath>

#include "qesim/gates.hpp"

namespace qesim {

StateVector random_pure_state(std::size_t qubits, Prng& rng) {
  const std::size_t dim = std::size_t{1} << qubits;
  std::vector<cplx> amps(dim);
  for (auto& a : amps) a = cplx{rng.normal(), rng.normal()};
  StateVector v(qubits, std::move(amps));
  v.normalize();
  return v;
}

DensityMatrix random_mixed_state(std::size_t qubits, Prng& rng) {
  const std::size_t dim = std::size_t{1} << qubits;
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g.at(i, j) = cplx{rng.normal(), rng.normal()};
  ComplexMatrix w = g * g.adjoint();
  const double tr = std::real(w.trace());
  w *= cplx{1.0 / tr, 0.0};
  return DensityMatrix(std::move(w));
}

ComplexMatrix random_unitary(std::size_t dim, Prng& rng) {
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = cplx{rng.normal(), rng.normal()};
  // Gram-Schmidt over columns.
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx overlap = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        overlap += std::conj(m.at(i, k)) * m.at(i, j);
      for (std::size_t i = 0; i < dim; ++i) m.at(i, j) -= overlap * m.at(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) norm += std::norm(m.at(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, j) /= norm;
  }
  return m;
}

DensityMatrix random_server_input(std::size_t aux_qubits, bool mixed_aux, Prng& rng) {
  DensityMatrix rho = DensityMatrix::pure(StateVector::plus_state());
  if (aux_qubits > 0) {
    if (mixed_aux)
      rho.tensor_with(random_mixed_state(aux_qubits, rng));
    else
      rho.tensor_with(DensityMatrix::pure(random_pure_state(aux_qubits, rng)));
  }
  const ComplexMatrix omega = random_unitary(rho.dim(), rng);
  ComplexMatrix m = omega * rho.matrix() * omega.adjoint();
  return DensityMatrix(std::move(m));
}

}  // namespace qesim
