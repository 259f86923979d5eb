#pragma once

#include <optional>
#include <vector>

#include "qesim/density_matrix.hpp"
#include "qesim/prng.hpp"
#include "qesim/transcript.hpp"
#include "qesim/ubqc/pattern.hpp"

namespace qesim::ubqc {

// How the server ends up holding the blinded qubits: the client sends them
// over a quantum channel, or a remote-state-preparation resource emits them,
// or a remote-state-rotation resource rotates server-supplied |+> states.
// All three deliver (theta at the client, |+_theta> at the server) and are
// required to be output-equivalent.
enum class Preparation { DirectQuantum, Rsp, Rsr };

struct RunOptions {
  Preparation preparation = Preparation::DirectQuantum;
  // Target client-recorded signals, one per measured vertex; when set, the
  // run follows exactly this branch and reports its probability.
  std::optional<std::vector<int>> forced_signals;
  // Measure the output layer server-side (computational basis) instead of
  // transferring the output qubits.
  bool classical_output = false;
  std::size_t max_qubits = 12;
};

struct RunResult {
  DensityMatrix client_output;     // corrected output state (quantum mode)
  std::vector<int> output_bits;    // classical mode
  double branch_probability = 1.0;
  std::vector<int> recorded_signals;  // client-side, after the r-flip
  std::vector<int> reported_signals;  // as sent by the server
  std::vector<int> r_bits;            // the client's hiding bits
  std::vector<Angle> deltas;
  Transcript transcript;
};

RunResult run_ubqc(const Pattern& pattern, const RunOptions& options, Prng& rng);

// All 2^M signal branches, each from a fresh generator with the same seed so
// the hidden angles coincide across branches and across preparation modes.
std::vector<RunResult> enumerate_signal_branches(const Pattern& pattern,
                                                 Preparation preparation,
                                                 std::uint64_t seed,
                                                 std::size_t max_qubits = 12);

}  // namespace qesim::ubqc
