#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "qesim/gates.hpp"
#include "qesim/prng.hpp"
#include "qesim/ubqc/blindness.hpp"
#include "qesim/ubqc/pattern.hpp"
#include "qesim/ubqc/reference.hpp"
#include "qesim/ubqc/session.hpp"

using namespace qesim;
using namespace qesim::ubqc;

namespace {

Pattern make_linear(int m, std::vector<int> phi_k) {
  std::vector<Angle> phi;
  for (int k : phi_k) phi.push_back(Angle::from_index(k));
  return Pattern(PatternGraph::build(1, m, GraphKind::LinearCluster), std::move(phi));
}

// Closed form for linear-cluster patterns: measuring a wire qubit at angle
// phi implements H Z(-phi) on the flowing state. Independent of the
// simulator machinery.
ComplexMatrix linear_chain_map(const std::vector<int>& phi_k) {
  ComplexMatrix u = ComplexMatrix::identity(2);
  for (int k : phi_k)
    u = gates::hadamard() * gates::z_rotation(Angle::from_index(k).negated()) * u;
  return u;
}

double overlap_deficit(const StateVector& got, const ComplexMatrix& u) {
  // 1 - |<want|got>|^2 for want = u |+>.
  const StateVector plus = StateVector::plus_state();
  cplx want0 = u.at(0, 0) * plus.amplitude(0) + u.at(0, 1) * plus.amplitude(1);
  cplx want1 = u.at(1, 0) * plus.amplitude(0) + u.at(1, 1) * plus.amplitude(1);
  const cplx ov = std::conj(want0) * got.amplitude(0) + std::conj(want1) * got.amplitude(1);
  return 1.0 - std::norm(ov);
}

}  // namespace

TEST_CASE("linear cluster graphs are paths") {
  const auto g = PatternGraph::build(1, 2, GraphKind::LinearCluster);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edges().size() == 2);
  CHECK(g.has_edge({0, 0}, {1, 0}));
  CHECK(g.has_edge({1, 0}, {2, 0}));
  CHECK_FALSE(g.has_edge({0, 0}, {2, 0}));
  CHECK(g.output_vertices().size() == 1);
  CHECK(g.is_output({2, 0}));

  // Determinism.
  CHECK(g == PatternGraph::build(1, 2, GraphKind::LinearCluster));

  CHECK_THROWS_AS(PatternGraph::build(2, 2, GraphKind::LinearCluster),
                  std::invalid_argument);
  CHECK_THROWS_AS(PatternGraph::build(0, 2, GraphKind::LinearCluster),
                  std::invalid_argument);
}

TEST_CASE("brickwork graphs carry the expected edge set") {
  // Two rows, four measured columns plus the output column (five total,
  // congruent to 5 mod 8): horizontal wires plus vertical rungs in columns
  // 3 and 5 on the odd row pair.
  const auto g = PatternGraph::build(2, 4, GraphKind::Brickwork);
  CHECK(g.vertex_count() == 10);

  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> expected;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c)
      expected.insert({{c, r}, {c + 1, r}});
  expected.insert({{2, 0}, {2, 1}});  // column 3, 1-based
  expected.insert({{4, 0}, {4, 1}});  // column 5, 1-based

  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> got;
  for (const auto& [a, b] : g.edges())
    got.insert({{a.column, a.row}, {b.column, b.row}});
  CHECK(got == expected);

  // The congruence precondition is enforced.
  CHECK_THROWS_AS(PatternGraph::build(2, 3, GraphKind::Brickwork),
                  std::invalid_argument);
  CHECK_THROWS_AS(PatternGraph::build(1, 4, GraphKind::Brickwork),
                  std::invalid_argument);
  CHECK_NOTHROW(PatternGraph::build(3, 4, GraphKind::Brickwork));
}

TEST_CASE("dependency sets follow the column flow") {
  const Pattern p = make_linear(3, {1, 2, 3});
  // Vertex i depends on i-1 for X and i-2 for Z.
  CHECK(p.x_deps(0).empty());
  CHECK(p.z_deps(0).empty());
  CHECK(p.x_deps(1) == std::vector<std::size_t>{0});
  CHECK(p.z_deps(1).empty());
  CHECK(p.x_deps(2) == std::vector<std::size_t>{1});
  CHECK(p.z_deps(2) == std::vector<std::size_t>{0});
  CHECK(p.output_x_deps(0) == std::vector<std::size_t>{2});
  CHECK(p.output_z_deps(0) == std::vector<std::size_t>{1});
}

TEST_CASE("updated angle and delta angle grid arithmetic") {
  CHECK(updated_angle(Angle::from_index(3), 0, 0) == Angle::from_index(3));
  CHECK(updated_angle(Angle::from_index(1), 1, 0) == Angle::from_index(7));
  CHECK(updated_angle(Angle::from_index(1), 0, 1) == Angle::from_index(5));

  CHECK(delta_angle(Angle::from_index(0), Angle::from_index(0), 0) ==
        Angle::from_index(0));
  CHECK(delta_angle(Angle::from_index(1), Angle::from_index(2), 1) ==
        Angle::from_index(7));
  CHECK(delta_angle(Angle::from_index(7), Angle::from_index(7), 1) ==
        Angle::from_index(2));
}

TEST_CASE("reference oracle matches the chain closed form") {
  Prng rng(201);
  for (int m = 1; m <= 4; ++m) {
    std::vector<int> phi_k;
    for (int i = 0; i < m; ++i)
      phi_k.push_back(static_cast<int>(rng.uniform_below(8)));
    const Pattern pattern = make_linear(m, phi_k);
    const ComplexMatrix u = linear_chain_map(phi_k);
    for (std::size_t b = 0; b < (std::size_t{1} << m); ++b) {
      std::vector<int> signals(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i)
        signals[static_cast<std::size_t>(i)] =
            static_cast<int>((b >> (m - 1 - i)) & 1);
      const auto branch = reference_branch(pattern, signals);
      CHECK(branch.probability ==
            doctest::Approx(1.0 / static_cast<double>(std::size_t{1} << m))
                .epsilon(1e-12));
      CHECK(overlap_deficit(branch.output, u) < 1e-12);
    }
  }
}

TEST_CASE("pattern map extraction is unitary and branch independent") {
  Prng rng(203);
  std::vector<Angle> phi;
  for (int i = 0; i < 8; ++i)
    phi.push_back(Angle::from_index(static_cast<int>(rng.uniform_below(8))));
  const Pattern pattern(PatternGraph::build(2, 4, GraphKind::Brickwork), phi);

  const std::vector<int> zero_signals(8, 0);
  const ComplexMatrix u = extract_pattern_map(pattern, zero_signals);
  const ComplexMatrix gram = u.adjoint() * u;
  CHECK(gram.max_abs_diff(ComplexMatrix::identity(4)) < 1e-12);

  // Another branch gives the same map up to a global phase.
  std::vector<int> other_signals = {1, 0, 1, 1, 0, 1, 0, 1};
  const ComplexMatrix u2 = extract_pattern_map(pattern, other_signals);
  cplx phase = 0.0;
  for (std::size_t i = 0; i < 4 && std::abs(phase) < 1e-9; ++i)
    for (std::size_t j = 0; j < 4 && std::abs(phase) < 1e-9; ++j)
      if (std::abs(u2.at(i, j)) > 1e-9) phase = u.at(i, j) / u2.at(i, j);
  CHECK(std::abs(std::abs(phase) - 1.0) < 1e-9);
  ComplexMatrix aligned = u2;
  aligned *= phase;
  CHECK(u.max_abs_diff(aligned) < 1e-10);
}

TEST_CASE("ubqc run agrees with the oracle on every branch") {
  Prng seed_rng(205);
  for (int m = 1; m <= 3; ++m) {
    std::vector<int> phi_k;
    for (int i = 0; i < m; ++i)
      phi_k.push_back(static_cast<int>(seed_rng.uniform_below(8)));
    const Pattern pattern = make_linear(m, phi_k);
    const auto branches =
        enumerate_signal_branches(pattern, Preparation::DirectQuantum, 4242);
    double prob_sum = 0.0;
    for (const auto& branch : branches) {
      const auto oracle = reference_branch(pattern, branch.recorded_signals);
      CHECK(fidelity_with_pure(branch.client_output, oracle.output) > 1.0 - 1e-12);
      CHECK(branch.branch_probability ==
            doctest::Approx(oracle.probability).epsilon(1e-12));
      prob_sum += branch.branch_probability;
    }
    CHECK(prob_sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ubqc on the brickwork pattern matches the oracle") {
  Prng seed_rng(207);
  std::vector<Angle> phi;
  for (int i = 0; i < 8; ++i)
    phi.push_back(Angle::from_index(static_cast<int>(seed_rng.uniform_below(8))));
  const Pattern pattern(PatternGraph::build(2, 4, GraphKind::Brickwork), phi);
  const auto branches =
      enumerate_signal_branches(pattern, Preparation::DirectQuantum, 777);
  double prob_sum = 0.0;
  for (const auto& branch : branches) {
    const auto oracle = reference_branch(pattern, branch.recorded_signals);
    CHECK(fidelity_with_pure(branch.client_output, oracle.output) > 1.0 - 1e-12);
    prob_sum += branch.branch_probability;
  }
  CHECK(prob_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("known small patterns produce the expected outputs") {
  // 1x2 with phi = (0, 0): the wire implements H H = I, so |+> comes out.
  {
    const Pattern pattern = make_linear(2, {0, 0});
    const auto branches =
        enumerate_signal_branches(pattern, Preparation::DirectQuantum, 11);
    for (const auto& branch : branches) {
      CHECK(fidelity_with_pure(branch.client_output, StateVector::plus_state()) >
            1.0 - 1e-12);
    }
  }
  // 1x2 with phi = (pi/4, 0): output is |+_{-pi/4}>.
  {
    const Pattern pattern = make_linear(2, {1, 0});
    const auto branches =
        enumerate_signal_branches(pattern, Preparation::DirectQuantum, 12);
    for (const auto& branch : branches) {
      CHECK(fidelity_with_pure(branch.client_output,
                               StateVector::plus_state(Angle::from_index(7))) >
            1.0 - 1e-12);
    }
  }
}

TEST_CASE("preparation backends are output equivalent") {
  const Pattern pattern = make_linear(3, {1, 5, 2});
  const auto direct =
      enumerate_signal_branches(pattern, Preparation::DirectQuantum, 999);
  for (const auto prep : {Preparation::Rsp, Preparation::Rsr}) {
    const auto other = enumerate_signal_branches(pattern, prep, 999);
    REQUIRE(other.size() == direct.size());
    for (std::size_t b = 0; b < direct.size(); ++b) {
      CHECK(std::abs(direct[b].branch_probability - other[b].branch_probability) <
            1e-12);
      CHECK(trace_distance(direct[b].client_output, other[b].client_output) < 1e-12);
      CHECK(direct[b].deltas == other[b].deltas);
    }
  }
}

TEST_CASE("every delta lies on the grid and the r-flip holds") {
  const Pattern pattern = make_linear(4, {3, 6, 1, 4});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Prng rng(seed);
    RunOptions opt;
    const auto run = run_ubqc(pattern, opt, rng);
    for (const Angle d : run.deltas) {
      CHECK(d.index() >= 0);
      CHECK(d.index() < 8);
    }
    for (std::size_t i = 0; i < run.r_bits.size(); ++i) {
      if (run.r_bits[i] == 1)
        CHECK(run.recorded_signals[i] != run.reported_signals[i]);
      else
        CHECK(run.recorded_signals[i] == run.reported_signals[i]);
    }
  }
}

TEST_CASE("classical output mode measures the corrected state") {
  // 1x1 with phi = 0 implements H: |+> -> |0>, so the output bit is 0.
  {
    const Pattern pattern = make_linear(1, {0});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Prng rng(seed);
      RunOptions opt;
      opt.classical_output = true;
      const auto run = run_ubqc(pattern, opt, rng);
      REQUIRE(run.output_bits.size() == 1);
      CHECK(run.output_bits[0] == 0);
    }
  }
  // phi = pi gives H Z(-pi)|+> = H|-> = |1>.
  {
    const Pattern pattern = make_linear(1, {4});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Prng rng(seed);
      RunOptions opt;
      opt.classical_output = true;
      const auto run = run_ubqc(pattern, opt, rng);
      CHECK(run.output_bits[0] == 1);
    }
  }
}

TEST_CASE("single-vertex server view is uniform") {
  const Pattern pattern = make_linear(1, {5});
  const auto view = server_view_distribution(pattern);
  CHECK(view.total == 32);
  const auto marginal = delta_marginal(view, 0);
  for (std::uint64_t c : marginal) CHECK(c == view.total / 8);
}

TEST_CASE("1x2 view is an independent uniform product") {
  const Pattern pattern = make_linear(2, {3, 6});
  const auto view = server_view_distribution(pattern);
  CHECK(view.total == 32 * 32);
  // Every (delta_1, delta_2, s~_1, s~_2) combination appears equally often.
  CHECK(view.counts.size() == 8 * 8 * 2 * 2);
  for (const auto& [key, count] : view.counts) CHECK(count == view.total / 256);
}

TEST_CASE("server views are identical across angle assignments") {
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs = {
      {{0, 0}, {7, 3}},
      {{1, 2}, {6, 6}},
      {{5, 0}, {0, 5}},
  };
  for (const auto& [phi1, phi2] : pairs) {
    const auto view1 = server_view_distribution(make_linear(2, phi1));
    const auto view2 = server_view_distribution(make_linear(2, phi2));
    const auto tv = total_variation(view1, view2);
    CHECK(tv.numerator == 0);
    CHECK(tv.value() == 0.0);
  }
  // Three-vertex pair as well.
  const auto v1 = server_view_distribution(make_linear(3, {1, 2, 3}));
  const auto v2 = server_view_distribution(make_linear(3, {4, 0, 7}));
  CHECK(total_variation(v1, v2).numerator == 0);
}

TEST_CASE("view enumeration bound is enforced") {
  std::vector<Angle> phi(8, Angle{});
  const Pattern pattern(PatternGraph::build(2, 4, GraphKind::Brickwork), phi);
  CHECK_THROWS_AS(server_view_distribution(pattern, 10000000),
                  EnumerationBoundExceeded);
}

TEST_CASE("signal branches occur with probability 2^-M under blinding") {
  // The counting model behind the view enumeration: every reported-signal
  // branch has the same probability, whatever theta, r and phi are.
  const Pattern pattern = make_linear(3, {2, 7, 4});
  const auto branches =
      enumerate_signal_branches(pattern, Preparation::DirectQuantum, 31337);
  for (const auto& branch : branches)
    CHECK(branch.branch_probability == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("pattern angle count must match the graph") {
  CHECK_THROWS_AS(Pattern(PatternGraph::build(1, 2, GraphKind::LinearCluster),
                          std::vector<Angle>{Angle{}}),
                  std::invalid_argument);
}
