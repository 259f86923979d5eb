#pragma once

#include "qesim/density_matrix.hpp"
#include "qesim/prng.hpp"
#include "qesim/state_vector.hpp"

namespace qesim {

// Haar-like random pure state: complex-Gaussian amplitudes, normalized.
StateVector random_pure_state(std::size_t qubits, Prng& rng);

// Random mixed state: G G^dagger / tr(G G^dagger) for complex-Gaussian G.
DensityMatrix random_mixed_state(std::size_t qubits, Prng& rng);

// Haar-like random unitary via Gram-Schmidt orthogonalization of a random
// complex matrix.
ComplexMatrix random_unitary(std::size_t dim, Prng& rng);

// Dishonest-server input: Omega (|+><+| (x) rho_aux) Omega^dagger over
// 1 + aux_qubits qubits; aux_qubits may be zero.
DensityMatrix random_server_input(std::size_t aux_qubits, bool mixed_aux, Prng& rng);

}  // namespace qesim
