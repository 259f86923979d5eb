#pragma once

#include <compare>
#include <vector>

#include "qesim/angle.hpp"

namespace qesim::ubqc {

// Grid vertex: column-major measurement order, 0-based. Columns
// 0..measured_columns-1 are measured; the last column is the output layer.
struct Vertex {
  int column = 0;
  int row = 0;
  auto operator<=>(const Vertex&) const = default;
};

enum class GraphKind { LinearCluster, Brickwork };

class PatternGraph {
 public:
  // Builds the graph with `measured_columns` measured columns plus one output
  // column. LinearCluster requires rows == 1; Brickwork requires rows >= 2
  // and a total column count (measured_columns + 1) congruent to 5 mod 8.
  static PatternGraph build(int rows, int measured_columns, GraphKind kind);

  GraphKind kind() const { return kind_; }
  int rows() const { return rows_; }
  int measured_columns() const { return measured_columns_; }
  int total_columns() const { return measured_columns_ + 1; }

  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  bool has_edge(Vertex a, Vertex b) const;
  std::vector<Vertex> neighbors(Vertex v) const;

  bool is_output(Vertex v) const { return v.column == measured_columns_; }
  std::vector<Vertex> measured_vertices() const;  // column-major order
  std::vector<Vertex> output_vertices() const;    // by row

  std::size_t vertex_count() const {
    return static_cast<std::size_t>(rows_) * static_cast<std::size_t>(total_columns());
  }
  std::size_t measured_count() const {
    return static_cast<std::size_t>(rows_) * static_cast<std::size_t>(measured_columns_);
  }

  bool operator==(const PatternGraph&) const = default;

 private:
  GraphKind kind_ = GraphKind::LinearCluster;
  int rows_ = 0;
  int measured_columns_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

// Measurement pattern: per-vertex computation angles plus the signal
// dependency sets derived from the column flow f(c, r) = (c+1, r).
class Pattern {
 public:
  // phi in column-major order over measured vertices.
  Pattern(PatternGraph graph, std::vector<Angle> phi);

  const PatternGraph& graph() const { return graph_; }
  const std::vector<Angle>& phi() const { return phi_; }
  Angle phi_at(std::size_t measured_index) const { return phi_[measured_index]; }

  // Indices into column-major measured order; entries are strictly smaller
  // than the vertex's own index.
  const std::vector<std::size_t>& x_deps(std::size_t measured_index) const {
    return x_deps_[measured_index];
  }
  const std::vector<std::size_t>& z_deps(std::size_t measured_index) const {
    return z_deps_[measured_index];
  }
  // Output-layer correction dependencies, per row.
  const std::vector<std::size_t>& output_x_deps(std::size_t row) const {
    return out_x_deps_[row];
  }
  const std::vector<std::size_t>& output_z_deps(std::size_t row) const {
    return out_z_deps_[row];
  }

  static std::size_t measured_index(const PatternGraph& g, Vertex v);

 private:
  PatternGraph graph_;
  std::vector<Angle> phi_;
  std::vector<std::vector<std::size_t>> x_deps_, z_deps_;
  std::vector<std::vector<std::size_t>> out_x_deps_, out_z_deps_;
};

// phi' = (-1)^{s_x} phi + s_z pi on the grid.
Angle updated_angle(Angle phi, int s_x, int s_z);

// delta = phi' + theta + pi r on the grid.
Angle delta_angle(Angle phi_prime, Angle theta, int r);

}  // namespace qesim::ubqc
