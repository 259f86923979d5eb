#include "qesim/ubqc/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "qesim/gates.hpp"

namespace qesim::ubqc {

ReferenceBranch reference_branch(const Pattern& pattern, std::span<const int> signals,
                                 const std::optional<StateVector>& input_column) {
  const PatternGraph& g = pattern.graph();
  const std::size_t rows = static_cast<std::size_t>(g.rows());
  const std::size_t measured = g.measured_count();
  if (signals.size() != measured)
    throw std::invalid_argument("signal count does not match measured vertex count");

  // Qubit order: column-major over all vertices, outputs last.
  StateVector state(0);
  if (input_column) {
    if (input_column->qubit_count() != rows)
      throw std::invalid_argument("input column qubit count mismatch");
    state.tensor_with(*input_column);
  } else {
    for (std::size_t r = 0; r < rows; ++r)
      state.tensor_with(StateVector::plus_state());
  }
  for (std::size_t i = rows; i < g.vertex_count(); ++i)
    state.tensor_with(StateVector::plus_state());

  auto vertex_slot = [&](Vertex v) {
    return static_cast<std::size_t>(v.column) * rows + static_cast<std::size_t>(v.row);
  };

  // Current position of each vertex's qubit; removals shift later ones down.
  std::vector<std::size_t> position(g.vertex_count());
  for (std::size_t i = 0; i < position.size(); ++i) position[i] = i;
  std::vector<bool> removed(g.vertex_count(), false);
  auto remove_slot = [&](std::size_t slot) {
    removed[slot] = true;
    for (std::size_t i = 0; i < position.size(); ++i)
      if (!removed[i] && position[i] > position[slot]) --position[i];
  };

  for (const auto& [a, b] : g.edges())
    state.apply(gates::cz(), position[vertex_slot(a)], position[vertex_slot(b)]);

  const auto order = g.measured_vertices();
  double prob = 1.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int s_x = 0, s_z = 0;
    for (std::size_t d : pattern.x_deps(i)) s_x ^= signals[d];
    for (std::size_t d : pattern.z_deps(i)) s_z ^= signals[d];
    const Angle adapted = updated_angle(pattern.phi_at(i), s_x, s_z);
    const std::size_t slot = vertex_slot(order[i]);
    prob *= state.project_and_remove(position[slot], adapted, signals[i]);
    remove_slot(slot);
  }

  for (std::size_t r = 0; r < rows; ++r) {
    int s_x = 0, s_z = 0;
    for (std::size_t d : pattern.output_x_deps(r)) s_x ^= signals[d];
    for (std::size_t d : pattern.output_z_deps(r)) s_z ^= signals[d];
    const std::size_t pos = position[vertex_slot({g.measured_columns(), static_cast<int>(r)})];
    if (s_x & 1) state.apply(gates::pauli_x(), pos);
    if (s_z & 1) state.apply(gates::pauli_z(), pos);
  }

  return {std::move(state), prob};
}

ComplexMatrix extract_pattern_map(const Pattern& pattern, std::span<const int> signals) {
  const std::size_t rows = static_cast<std::size_t>(pattern.graph().rows());
  const std::size_t dim = std::size_t{1} << rows;
  const double scale =
      std::sqrt(static_cast<double>(std::size_t{1} << pattern.graph().measured_count()));
  ComplexMatrix map(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const auto branch = reference_branch(pattern, signals,
                                         StateVector::computational(rows, b));
    const double amp = std::sqrt(branch.probability) * scale;
    for (std::size_t i = 0; i < dim; ++i)
      map.at(i, b) = amp * branch.output.amplitude(i);
  }
  return map;
}

}  // namespace qesim::ubqc
