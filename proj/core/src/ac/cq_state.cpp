#include "qesim/ac/cq_state.hpp"

#include <cmath>
#include <stdexcept>

namespace qesim::ac {

void CqState::add_contribution(Angle theta, double weight, const ComplexMatrix& state) {
  auto& blk = blocks_[static_cast<std::size_t>(theta.index())];
  ComplexMatrix scaled = state;
  scaled *= cplx{weight, 0.0};
  if (!blk)
    blk = std::move(scaled);
  else
    *blk += scaled;
}

double CqState::weight(Angle theta) const {
  const auto& blk = blocks_[static_cast<std::size_t>(theta.index())];
  return blk ? std::real(blk->trace()) : 0.0;
}

DensityMatrix CqState::branch(Angle theta) const {
  const auto& blk = blocks_[static_cast<std::size_t>(theta.index())];
  if (!blk) throw std::invalid_argument("branch has no contribution");
  const double w = std::real(blk->trace());
  if (w < 1e-300) throw std::invalid_argument("branch has zero weight");
  ComplexMatrix m = *blk;
  m *= cplx{1.0 / w, 0.0};
  return DensityMatrix(std::move(m));
}

const ComplexMatrix* CqState::block(Angle theta) const {
  const auto& blk = blocks_[static_cast<std::size_t>(theta.index())];
  return blk ? &*blk : nullptr;
}

double CqState::total_weight() const {
  double t = 0.0;
  for (int k : Angle::all_indices()) t += weight(Angle::from_index(k));
  return t;
}

std::size_t CqState::branch_dim() const {
  for (const auto& blk : blocks_)
    if (blk) return blk->rows();
  return 0;
}

bool CqState::is_valid(double tol) const {
  if (std::abs(total_weight() - 1.0) > tol) return false;
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    if (weight(th) > tol && !branch(th).is_valid(tol)) return false;
  }
  return true;
}

double distinguish(const CqState& a, const CqState& b) {
  const std::size_t dim = a.branch_dim() ? a.branch_dim() : b.branch_dim();
  if (b.branch_dim() && a.branch_dim() && a.branch_dim() != b.branch_dim())
    throw std::invalid_argument("distinguish: branch dimension mismatch");
  double total = 0.0;
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    const ComplexMatrix* ba = a.block(th);
    const ComplexMatrix* bb = b.block(th);
    if (!ba && !bb) continue;
    ComplexMatrix diff = ba ? *ba : ComplexMatrix(dim, dim);
    if (bb) diff -= *bb;
    total += 0.5 * trace_norm_hermitian(diff);
  }
  return total;
}

}  // namespace qesim::ac
