#pragma once

#include "qesim/ac/cq_state.hpp"
#include "qesim/ac/resources.hpp"
#include "qesim/random_states.hpp"

namespace qesim::ac {

// The four compositions the distinguisher compares. Honest kinds ignore the
// server input; dishonest kinds require it (qubit 0 = the submitted qubit,
// remaining qubits = auxiliaries the server keeps).
enum class SystemKind {
  RsrHonestFiltered,   // pi_A . RSR_B . pi_B
  MrspFiltered,        // MRSP_B . filter
  RsrWithServerInput,  // pi_A . RSR_B, dishonest server
  MrspWithSimulator,   // MRSP_B . sigma_B
};

// Exact output state at (A, B): every angle branch (and, for the simulator
// composition, both measurement outcomes) is enumerated; no sampling.
CqState output_cq_state(SystemKind kind, const DensityMatrix* server_input = nullptr,
                        std::size_t max_qubits = 12);

// Branch states of a CqState, normalized, as a state family (for the weak
// correlation conditions).
StateFamily branch_family(const CqState& cq);

// distinguish(pi_A RSR_B pi_B, MRSP_B filter)
double correctness_distance(std::size_t max_qubits = 12);

// distinguish(pi_A RSR_B, MRSP_B sigma_B) for one dishonest input.
double security_distance(const DensityMatrix& server_input, std::size_t max_qubits = 12);

struct EquivalenceSuiteResult {
  double correctness = 0.0;
  double max_security = 0.0;
  int trials = 0;
  bool weak_correlation_all_passed = true;
};

// Randomized dishonest-input suite: pure, mixed, and entangled inputs with
// up to two auxiliary qubits, Haar-like deviations. validity_tol bounds the
// weak-correlation condition checks on the output families.
EquivalenceSuiteResult run_equivalence_suite(int trials, Prng& rng,
                                             std::size_t max_qubits = 12,
                                             double validity_tol = 1e-9);

}  // namespace qesim::ac
