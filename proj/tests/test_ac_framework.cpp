#include <doctest.h>

#include <cmath>

#include "qesim/ac/equivalence.hpp"
#include "qesim/ac/resources.hpp"
#include "qesim/ac/weak_correlation.hpp"
#include "qesim/gates.hpp"
#include "qesim/random_states.hpp"

using namespace qesim;
using namespace qesim::ac;

TEST_CASE("weak correlation accepts the plus-state family") {
  CHECK(weak_correlation_check(StateFamily::plus_states()));
}

TEST_CASE("weak correlation accepts rotation families of random states") {
  Prng rng(101);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = (t % 2) ? random_mixed_state(1, rng)
                                      : DensityMatrix::pure(random_pure_state(1, rng));
    CHECK(weak_correlation_check(StateFamily::rotations_of(rho.matrix())));
  }
}

TEST_CASE("weak correlation rejects the constructed counterexample") {
  // All |+_theta> except theta = pi/2 replaced by |0><0|: the pi/2 pair sum
  // is |0><0| + |+_{3pi/2}><+_{3pi/2}| != I (direct matrix check).
  StateFamily family = StateFamily::plus_states();
  ComplexMatrix zero(2, 2);
  zero.at(0, 0) = 1.0;
  family.set(Angle::from_index(2), zero);
  CHECK_FALSE(weak_correlation_check(family));
}

TEST_CASE("weak correlation requires a complete family") {
  StateFamily partial;
  partial.set(Angle::from_index(0), gates::plus_projector(Angle{}));
  CHECK_THROWS_AS(weak_correlation_check(partial), MissingAngleError);
}

TEST_CASE("rsr rotates the server qubit and reveals theta at A only") {
  Prng rng(103);
  // |+> input: B ends holding |+_theta>.
  for (int t = 0; t < 16; ++t) {
    QuantumRegister reg;
    const HandleId h = PiB{}.prepare_plus(reg);
    const Angle theta = RsrResource{}.rotate(reg, h, rng);
    CHECK(reg.holder(h) == kServerParty);
    const DensityMatrix got = reg.reduced_state(h);
    const DensityMatrix want = DensityMatrix::pure(StateVector::plus_state(theta));
    CHECK(trace_distance(got, want) < 1e-12);
  }

  // |0> input: diagonal states are invariant.
  QuantumRegister reg;
  const HandleId h = reg.add_pure(StateVector::computational(1, 0), kServerParty);
  RsrResource{}.rotate(reg, h, rng);
  const DensityMatrix want = DensityMatrix::pure(StateVector::computational(1, 0));
  CHECK(trace_distance(reg.reduced_state(h), want) < 1e-12);
}

TEST_CASE("rsr on half a Bell pair matches the entangled block form") {
  const double s = 1.0 / std::sqrt(2.0);
  const StateVector bell(2, {s, 0.0, 0.0, s});
  for (int k : Angle::all_indices()) {
    const Angle theta = Angle::from_index(k);
    QuantumRegister reg;
    const HandleId full = reg.add_pure(bell, kServerParty);
    const std::size_t first[1] = {0};
    const HandleId qubit = reg.split(full, first);
    RsrResource{}.rotate_branch(reg, qubit, theta);
    const DensityMatrix got = reg.full_density();
    const DensityMatrix want = z_rotate_density(theta, DensityMatrix::pure(bell));
    CHECK(got.matrix().max_abs_diff(want.matrix()) < 1e-13);
  }
}

TEST_CASE("rsr rejects multi-qubit handles") {
  Prng rng(105);
  QuantumRegister reg;
  const HandleId h = reg.add_pure(StateVector(2), kServerParty);
  CHECK_THROWS_AS(RsrResource{}.rotate(reg, h, rng), std::invalid_argument);
}

TEST_CASE("rsp honest and dishonest branches") {
  Prng rng(107);
  // c = 0: |+_theta>.
  {
    QuantumRegister reg;
    const auto out = RspResource{}.prepare_honest_branch(reg, Angle::from_index(3));
    const DensityMatrix want =
        DensityMatrix::pure(StateVector::plus_state(Angle::from_index(3)));
    CHECK(trace_distance(reg.reduced_state(out.state), want) < 1e-12);
  }
  // c = 1 with the plus-state family reproduces the honest distribution.
  {
    QuantumRegister reg;
    const auto out = RspResource{}.prepare_dishonest_branch(
        reg, StateFamily::plus_states(), Angle::from_index(5));
    const DensityMatrix want =
        DensityMatrix::pure(StateVector::plus_state(Angle::from_index(5)));
    CHECK(trace_distance(reg.reduced_state(out.state), want) < 1e-12);
  }
  // Invalid family: retriable rejection.
  {
    QuantumRegister reg;
    StateFamily bad = StateFamily::plus_states();
    ComplexMatrix zero(2, 2);
    zero.at(0, 0) = 1.0;
    bad.set(Angle::from_index(2), zero);
    CHECK_THROWS_AS(RspResource{}.prepare_dishonest(reg, bad, rng), InvalidFamilyError);
    CHECK(reg.total_qubits() == 0);  // resource state unchanged, retry allowed
    CHECK_NOTHROW(RspResource{}.prepare_dishonest(reg, StateFamily::plus_states(), rng));
  }
}

TEST_CASE("projector family validation") {
  // I/2 halves: accepted (pairs sum to I).
  CHECK_NOTHROW(ProjectorFamily::halves(2).validate());

  // Family violating the pair-sum condition: rejected.
  ProjectorFamily bad;
  for (int k : Angle::all_indices()) {
    ComplexMatrix third = ComplexMatrix::identity(2);
    third *= cplx{1.0 / 3.0, 0.0};
    bad.set(Angle::from_index(k), third);
  }
  CHECK_THROWS_AS(bad.validate(), InvalidFamilyError);

  // The simulator's family is a valid projector family.
  CHECK_NOTHROW(SimulatorSigmaB::projector_family().validate());
}

TEST_CASE("mrsp honest branch equals rsp honest branch") {
  for (int k : Angle::all_indices()) {
    QuantumRegister r1, r2;
    const auto m = MrspResource{}.prepare_honest_branch(r1, Angle::from_index(k));
    const auto p = RspResource{}.prepare_honest_branch(r2, Angle::from_index(k));
    CHECK(m.theta == p.theta);
    CHECK(trace_distance(r1.reduced_state(m.state), r2.reduced_state(p.state)) < 1e-13);
  }
}

TEST_CASE("mrsp measurement against a direct Born-rule oracle") {
  // Simulator-style setup: rho = CNOT(|psi>|0>), projectors
  // Pi_theta = |+_{-theta}><+_{-theta}| on the second qubit. The oracle
  // computes the outcome probability and post-state directly from the
  // projector algebra.
  Prng rng(109);
  const ProjectorFamily family = SimulatorSigmaB::projector_family();
  for (int t = 0; t < 8; ++t) {
    const StateVector psi = random_pure_state(1, rng);
    StateVector joint = psi;
    joint.tensor_with(StateVector(1));
    joint.apply(gates::cnot(), 0, 1);
    const DensityMatrix rho = DensityMatrix::pure(joint);

    const Angle theta = Angle::from_index(t);
    for (bool antipodal : {false, true}) {
      const Angle label = antipodal ? theta.antipode() : theta;
      ProjectorFamily embedded;
      for (int k : Angle::all_indices()) {
        const Angle a = Angle::from_index(k);
        embedded.set(a, kron(ComplexMatrix::identity(2), family.at(a)));
      }
      // Oracle: p = tr(Pi rho), post = Pi rho Pi / p (rank-one projector).
      const ComplexMatrix big_pi = embedded.at(label);
      const double p_oracle = std::real((big_pi * rho.matrix()).trace());
      ComplexMatrix post_oracle = big_pi * rho.matrix() * big_pi;
      post_oracle *= cplx{1.0 / p_oracle, 0.0};

      const auto out = MrspResource{}.measure_branch(embedded, rho, theta, antipodal);
      CHECK(out.theta_prime == label);
      CHECK(out.probability == doctest::Approx(p_oracle).epsilon(1e-12));
      CHECK(out.probability == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(out.post_state.matrix().max_abs_diff(post_oracle) < 1e-12);

      // Tracing out the measured ancilla yields the rotated input state.
      const std::size_t keep[1] = {0};
      const DensityMatrix server_side = out.post_state.partial_trace_keep(keep);
      const DensityMatrix want = z_rotate_density(label, DensityMatrix::pure(psi));
      CHECK(server_side.matrix().max_abs_diff(want.matrix()) < 1e-12);
    }
  }
}

TEST_CASE("mrsp with identity-halves family leaves the state unchanged") {
  Prng rng(111);
  const DensityMatrix rho = random_mixed_state(1, rng);
  const auto out = MrspResource{}.measure_branch(ProjectorFamily::halves(2), rho,
                                                 Angle::from_index(3), false);
  CHECK(out.probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(out.post_state.matrix().max_abs_diff(rho.matrix()) < 1e-12);
}

TEST_CASE("simulator attach reproduces the rotated server state") {
  Prng rng(113);
  for (int k : Angle::all_indices()) {
    const Angle theta = Angle::from_index(k);
    const StateVector psi = random_pure_state(1, rng);
    QuantumRegister reg;
    const HandleId qubit = reg.add_mixed(DensityMatrix::pure(psi), kServerParty);
    const auto attached = SimulatorSigmaB{}.attach(reg, qubit);
    CHECK(reg.holder(attached.server_qubit) == kServerParty);
    CHECK(reg.holder(attached.ancilla) == kResourceParty);
    MrspResource{}.measure_handle_branch(reg, attached.ancilla,
                                         SimulatorSigmaB::projector_family(), theta,
                                         false);
    const std::size_t keep[1] = {0};
    const DensityMatrix server_state = reg.full_density().partial_trace_keep(keep);
    const DensityMatrix want = z_rotate_density(theta, DensityMatrix::pure(psi));
    CHECK(server_state.matrix().max_abs_diff(want.matrix()) < 1e-12);
  }
}

TEST_CASE("cq state output for the honest compositions") {
  const CqState rsr = output_cq_state(SystemKind::RsrHonestFiltered);
  const CqState mrsp = output_cq_state(SystemKind::MrspFiltered);
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    CHECK(rsr.weight(th) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
    const DensityMatrix want = DensityMatrix::pure(StateVector::plus_state(th));
    CHECK(rsr.branch(th).matrix().max_abs_diff(want.matrix()) < 1e-12);
  }
  CHECK(rsr.is_valid());
  CHECK(mrsp.is_valid());
  CHECK(distinguish(rsr, mrsp) < 1e-12);
}

TEST_CASE("distinguish measures the block-diagonal trace distance") {
  // Identical inputs: zero.
  const CqState a = output_cq_state(SystemKind::RsrHonestFiltered);
  CHECK(distinguish(a, a) == 0.0);

  // One branch replaced by an orthogonal state: advantage 1/8 (the
  // eigenvalues of the differing weighted block are +-1/8).
  CqState b;
  CqState c;
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    const ComplexMatrix plus = gates::plus_projector(th);
    b.add_contribution(th, 1.0 / 8.0, plus);
    if (k == 0) {
      c.add_contribution(th, 1.0 / 8.0, gates::minus_projector(th));
    } else {
      c.add_contribution(th, 1.0 / 8.0, plus);
    }
  }
  CHECK(distinguish(b, c) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("construction correctness and security hold exactly") {
  CHECK(correctness_distance() < 1e-12);

  Prng rng(115);
  for (int t = 0; t < 12; ++t) {
    const std::size_t aux = static_cast<std::size_t>(t % 3);
    const DensityMatrix input = random_server_input(aux, t % 2 == 1, rng);
    CHECK(security_distance(input) < 1e-12);
  }
}

TEST_CASE("mrsp-with-simulator outcome labels are uniform") {
  Prng rng(117);
  const DensityMatrix input = random_server_input(1, false, rng);
  const CqState out = output_cq_state(SystemKind::MrspWithSimulator, &input);
  for (int k : Angle::all_indices())
    CHECK(out.weight(Angle::from_index(k)) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("rsr output branch families satisfy weak correlation") {
  Prng rng(119);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix input =
        random_server_input(static_cast<std::size_t>(t % 3), t % 2 == 0, rng);
    const CqState out = output_cq_state(SystemKind::RsrWithServerInput, &input);
    CHECK(weak_correlation_check(branch_family(out)));
  }
}

TEST_CASE("equivalence suite aggregates the distances") {
  Prng rng(121);
  const auto result = run_equivalence_suite(9, rng);
  CHECK(result.trials == 9);
  CHECK(result.correctness < 1e-12);
  CHECK(result.max_security < 1e-12);
  CHECK(result.weak_correlation_all_passed);
}
