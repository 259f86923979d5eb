#include "qesim/ubqc/pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace qesim::ubqc {

PatternGraph PatternGraph::build(int rows, int measured_columns, GraphKind kind) {
  if (rows < 1 || measured_columns < 1)
    throw std::invalid_argument("pattern dimensions must be positive");

  PatternGraph g;
  g.kind_ = kind;
  g.rows_ = rows;
  g.measured_columns_ = measured_columns;
  const int total = measured_columns + 1;

  switch (kind) {
    case GraphKind::LinearCluster: {
      if (rows != 1)
        throw std::invalid_argument("linear cluster requires a single row");
      for (int c = 0; c + 1 < total; ++c)
        g.edges_.push_back({{c, 0}, {c + 1, 0}});
      break;
    }
    case GraphKind::Brickwork: {
      if (rows < 2)
        throw std::invalid_argument("brickwork requires at least two rows");
      if (total % 8 != 5)
        throw std::invalid_argument(
            "brickwork total column count must be congruent to 5 mod 8");
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c + 1 < total; ++c)
          g.edges_.push_back({{c, r}, {c + 1, r}});
      // Vertical rungs; columns are 1-based in the congruence rule.
      for (int c = 0; c < total; ++c) {
        const int col1 = c + 1;
        const bool odd_rung = (col1 % 8 == 3) || (col1 % 8 == 5);
        const bool even_rung = (col1 % 8 == 7) || (col1 % 8 == 1 && col1 > 8);
        for (int r = 0; r + 1 < rows; ++r) {
          const int row1 = r + 1;
          if ((odd_rung && row1 % 2 == 1) || (even_rung && row1 % 2 == 0))
            g.edges_.push_back({{c, r}, {c, r + 1}});
        }
      }
      break;
    }
  }
  return g;
}

bool PatternGraph::has_edge(Vertex a, Vertex b) const {
  if (b < a) std::swap(a, b);
  return std::find(edges_.begin(), edges_.end(), std::pair{a, b}) != edges_.end();
}

std::vector<Vertex> PatternGraph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for (const auto& [a, b] : edges_) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> PatternGraph::measured_vertices() const {
  std::vector<Vertex> out;
  out.reserve(measured_count());
  for (int c = 0; c < measured_columns_; ++c)
    for (int r = 0; r < rows_; ++r) out.push_back({c, r});
  return out;
}

std::vector<Vertex> PatternGraph::output_vertices() const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) out.push_back({measured_columns_, r});
  return out;
}

std::size_t Pattern::measured_index(const PatternGraph& g, Vertex v) {
  return static_cast<std::size_t>(v.column) * static_cast<std::size_t>(g.rows()) +
         static_cast<std::size_t>(v.row);
}

Pattern::Pattern(PatternGraph graph, std::vector<Angle> phi)
    : graph_(std::move(graph)), phi_(std::move(phi)) {
  if (phi_.size() != graph_.measured_count())
    throw std::invalid_argument("angle count does not match measured vertex count");

  const auto measured = graph_.measured_vertices();
  x_deps_.resize(measured.size());
  z_deps_.resize(measured.size());
  out_x_deps_.resize(static_cast<std::size_t>(graph_.rows()));
  out_z_deps_.resize(static_cast<std::size_t>(graph_.rows()));

  // Flow f(c, r) = (c+1, r). Measuring u produces an X correction on f(u)
  // and Z corrections on the other neighbors of f(u); folding those into
  // later measurement angles yields the dependency sets below.
  for (std::size_t ui = 0; ui < measured.size(); ++ui) {
    const Vertex u = measured[ui];
    const Vertex fu{u.column + 1, u.row};
    if (graph_.is_output(fu)) {
      out_x_deps_[static_cast<std::size_t>(fu.row)].push_back(ui);
    } else {
      x_deps_[measured_index(graph_, fu)].push_back(ui);
    }
    for (const Vertex w : graph_.neighbors(fu)) {
      if (w == u) continue;
      if (graph_.is_output(w)) {
        out_z_deps_[static_cast<std::size_t>(w.row)].push_back(ui);
      } else {
        z_deps_[measured_index(graph_, w)].push_back(ui);
      }
    }
  }

  for (std::size_t vi = 0; vi < measured.size(); ++vi) {
    for (std::size_t d : x_deps_[vi])
      if (d >= vi) throw std::logic_error("dependency set references a later vertex");
    for (std::size_t d : z_deps_[vi])
      if (d >= vi) throw std::logic_error("dependency set references a later vertex");
  }
}

Angle updated_angle(Angle phi, int s_x, int s_z) {
  Angle out = (s_x & 1) ? phi.negated() : phi;
  if (s_z & 1) out = out.antipode();
  return out;
}

Angle delta_angle(Angle phi_prime, Angle theta, int r) {
  Angle out = phi_prime + theta;
  if (r & 1) out = out.antipode();
  return out;
}

}  // namespace qesim::ubqc
