#pragma once

#include <array>
#include <optional>

#include "qesim/angle.hpp"
#include "qesim/density_matrix.hpp"

namespace qesim::ac {

// Classical-quantum joint state over the eight grid angles: one weighted
// quantum block per angle label. Blocks accumulate, so a label reached along
// several enumeration paths ends up with the correctly mixed branch state.
class CqState {
 public:
  void add_contribution(Angle theta, double weight, const ComplexMatrix& state);

  double weight(Angle theta) const;
  // Normalized branch state; throws if the branch has zero weight.
  DensityMatrix branch(Angle theta) const;
  // Weighted block as stored (weight * branch).
  const ComplexMatrix* block(Angle theta) const;

  double total_weight() const;
  std::size_t branch_dim() const;

  // weights sum to one within tol and every branch is a valid state.
  bool is_valid(double tol = 1e-9) const;

 private:
  std::array<std::optional<ComplexMatrix>, 8> blocks_;
};

// Maximal distinguishing advantage between two one-shot classical-quantum
// outputs: the trace distance of their block-diagonal density operators.
double distinguish(const CqState& a, const CqState& b);

}  // namespace qesim::ac
