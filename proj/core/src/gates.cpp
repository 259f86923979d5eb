#include "qesim/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qesim::gates {

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

ComplexMatrix make2(cplx a, cplx b, cplx c, cplx d) {
  return ComplexMatrix(2, 2, {a, b, c, d});
}
}  // namespace

const ComplexMatrix& identity2() {
  static const ComplexMatrix m = ComplexMatrix::identity(2);
  return m;
}

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = make2(0, 1, 1, 0);
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = make2(0, cplx{0, -1}, cplx{0, 1}, 0);
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = make2(1, 0, 0, -1);
  return m;
}

const ComplexMatrix& hadamard() {
  static const ComplexMatrix m =
      make2(inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
  return m;
}

const ComplexMatrix& cz() {
  static const ComplexMatrix m = [] {
    ComplexMatrix c = ComplexMatrix::identity(4);
    c.at(3, 3) = -1.0;
    return c;
  }();
  return m;
}

const ComplexMatrix& cnot() {
  static const ComplexMatrix m = [] {
    ComplexMatrix c(4, 4);
    c.at(0, 0) = 1.0;
    c.at(1, 1) = 1.0;
    c.at(2, 3) = 1.0;
    c.at(3, 2) = 1.0;
    return c;
  }();
  return m;
}

ComplexMatrix z_rotation(Angle theta) {
  return make2(1, 0, 0, std::polar(1.0, theta.radians()));
}

ComplexMatrix matrix_for(Kind kind, Angle theta) {
  switch (kind) {
    case Kind::I: return identity2();
    case Kind::X: return pauli_x();
    case Kind::Y: return pauli_y();
    case Kind::Z: return pauli_z();
    case Kind::H: return hadamard();
    case Kind::ZRot: return z_rotation(theta);
    case Kind::CZ: return cz();
    case Kind::CNOT: return cnot();
  }
  throw std::invalid_argument("unknown gate kind");
}

std::size_t arity(Kind kind) {
  return (kind == Kind::CZ || kind == Kind::CNOT) ? 2 : 1;
}

ComplexMatrix plus_ket(Angle delta) {
  return ComplexMatrix(2, 1,
                       {inv_sqrt2, inv_sqrt2 * std::polar(1.0, delta.radians())});
}

ComplexMatrix minus_ket(Angle delta) {
  return ComplexMatrix(
      2, 1, {inv_sqrt2, -inv_sqrt2 * std::polar(1.0, delta.radians())});
}

ComplexMatrix plus_projector(Angle delta) {
  auto k = plus_ket(delta);
  return k * k.adjoint();
}

ComplexMatrix minus_projector(Angle delta) {
  auto k = minus_ket(delta);
  return k * k.adjoint();
}

}  // namespace qesim::gates
