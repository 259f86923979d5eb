#pragma once

#include <optional>
#include <span>

#include "qesim/state_vector.hpp"
#include "qesim/ubqc/pattern.hpp"

namespace qesim::ubqc {

// Direct statevector simulation of the measurement pattern with no blinding:
// every vertex is |+> (the input column can be overridden), CZ per edge,
// adapted-angle measurements forced to the given signals, Pauli corrections
// on the output layer. Independent of the protocol session machinery; used
// as the correctness oracle.
struct ReferenceBranch {
  StateVector output;        // output column, row order, corrected
  double probability = 1.0;  // of the forced signal branch
};

ReferenceBranch reference_branch(const Pattern& pattern, std::span<const int> signals,
                                 const std::optional<StateVector>& input_column = {});

// The linear map the pattern implements from the input column to the output
// column, reconstructed from unnormalized branch outputs. For a flow pattern
// this is unitary and branch-independent up to a global phase.
ComplexMatrix extract_pattern_map(const Pattern& pattern, std::span<const int> signals);

}  // namespace qesim::ubqc
