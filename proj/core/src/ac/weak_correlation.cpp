#include "qesim/ac/weak_correlation.hpp"

#include <cmath>

#include "qesim/density_matrix.hpp"
#include "qesim/gates.hpp"

namespace qesim::ac {

void StateFamily::set(Angle theta, ComplexMatrix rho) {
  states_[static_cast<std::size_t>(theta.index())] = std::move(rho);
}

bool StateFamily::complete() const {
  for (const auto& s : states_)
    if (!s) return false;
  return true;
}

const ComplexMatrix& StateFamily::at(Angle theta) const {
  const auto& s = states_[static_cast<std::size_t>(theta.index())];
  if (!s) throw MissingAngleError("state family has no entry for " + theta.str());
  return *s;
}

StateFamily StateFamily::plus_states() {
  StateFamily f;
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    f.set(th, gates::plus_projector(th));
  }
  return f;
}

StateFamily StateFamily::rotations_of(const ComplexMatrix& rho_in) {
  StateFamily f;
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    f.set(th, z_rotate_block_matrix(th, rho_in));
  }
  return f;
}

void ProjectorFamily::set(Angle theta, ComplexMatrix op) {
  ops_[static_cast<std::size_t>(theta.index())] = std::move(op);
}

bool ProjectorFamily::complete() const {
  for (const auto& o : ops_)
    if (!o) return false;
  return true;
}

const ComplexMatrix& ProjectorFamily::at(Angle theta) const {
  const auto& o = ops_[static_cast<std::size_t>(theta.index())];
  if (!o) throw MissingAngleError("projector family has no entry for " + theta.str());
  return *o;
}

void ProjectorFamily::validate(double tol) const {
  if (!complete()) throw InvalidFamilyError("projector family is incomplete");
  const std::size_t dim = at(Angle{}).rows();
  for (int k : Angle::all_indices()) {
    const auto& op = at(Angle::from_index(k));
    if (op.rows() != dim || op.cols() != dim)
      throw InvalidFamilyError("projector dimensions are inconsistent");
    if (!op.is_hermitian(tol))
      throw InvalidFamilyError("projector is not Hermitian");
    const auto eigs = hermitian_eigenvalues(op);
    if (!eigs.empty() && eigs.front() < -tol)
      throw InvalidFamilyError("projector is not positive semidefinite");
  }
  const ComplexMatrix id = ComplexMatrix::identity(dim);
  for (int k = 0; k < 4; ++k) {
    const Angle th = Angle::from_index(k);
    const ComplexMatrix sum = at(th) + at(th.antipode());
    if (sum.max_abs_diff(id) > tol)
      throw InvalidFamilyError("antipodal pair does not sum to the identity");
  }
}

ProjectorFamily ProjectorFamily::halves(std::size_t dim) {
  ProjectorFamily f;
  ComplexMatrix half = ComplexMatrix::identity(dim);
  half *= cplx{0.5, 0.0};
  for (int k : Angle::all_indices()) f.set(Angle::from_index(k), half);
  return f;
}

bool weak_correlation_check(const StateFamily& family, double tol) {
  if (!family.complete())
    throw MissingAngleError("state family is missing an angle entry");
  for (int k : Angle::all_indices()) {
    DensityMatrix rho{family.at(Angle::from_index(k))};
    if (!rho.is_valid(tol)) return false;
  }
  const ComplexMatrix reference =
      family.at(Angle::from_index(0)) + family.at(Angle::from_index(4));
  for (int k = 1; k < 4; ++k) {
    const Angle th = Angle::from_index(k);
    const ComplexMatrix sum = family.at(th) + family.at(th.antipode());
    if (sum.max_abs_diff(reference) > tol) return false;
  }
  return true;
}

}  // namespace qesim::ac
