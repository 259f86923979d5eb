#pragma once

#include "qesim/angle.hpp"
#include "qesim/linalg.hpp"

namespace qesim::gates {

enum class Kind { I, X, Y, Z, H, ZRot, CZ, CNOT };

const ComplexMatrix& identity2();
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();
const ComplexMatrix& hadamard();
const ComplexMatrix& cz();
const ComplexMatrix& cnot();

// Z(theta) = diag(1, e^{i theta}); maps |+> to |+_theta>.
ComplexMatrix z_rotation(Angle theta);

// Unitary for a named gate; theta is consulted only for Kind::ZRot.
ComplexMatrix matrix_for(Kind kind, Angle theta = Angle{});

std::size_t arity(Kind kind);

// |+_delta> and |-_delta> as 2x1 column matrices.
ComplexMatrix plus_ket(Angle delta);
ComplexMatrix minus_ket(Angle delta);

// Rank-one projectors |+_delta><+_delta| and |-_delta><-_delta|.
ComplexMatrix plus_projector(Angle delta);
ComplexMatrix minus_projector(Angle delta);

}  // namespace qesim::gates
