#include <doctest.h>

#include <cmath>

#include "qesim/density_matrix.hpp"
#include "qesim/gates.hpp"
#include "qesim/linalg.hpp"
#include "qesim/prng.hpp"
#include "qesim/quantum_register.hpp"
#include "qesim/random_states.hpp"
#include "qesim/state_vector.hpp"

using namespace qesim;

namespace {

DensityMatrix plus_density(Angle theta = Angle{}) {
  return DensityMatrix::pure(StateVector::plus_state(theta));
}

}  // namespace

TEST_CASE("angle grid arithmetic") {
  CHECK(Angle::from_index(3).index() == 3);
  CHECK(Angle::from_index(11).index() == 3);
  CHECK(Angle::from_index(-1).index() == 7);
  CHECK(Angle::from_index(0).antipode().index() == 4);
  CHECK(Angle::from_index(6).antipode().index() == 2);
  CHECK(Angle::from_index(3).negated().index() == 5);
  CHECK(Angle::from_index(0).negated().index() == 0);
  CHECK((Angle::from_index(5) + Angle::from_index(6)).index() == 3);
  CHECK((Angle::from_index(1) - Angle::from_index(3)).index() == 6);
  CHECK(Angle::from_index(2).radians() == doctest::Approx(M_PI / 2).epsilon(1e-15));
}

TEST_CASE("eigensolver matches known spectra") {
  // |0><0| - |+><+| has eigenvalues +-1/sqrt(2).
  ComplexMatrix d(2, 2, {0.5, -0.5, -0.5, -0.5});
  const auto eigs = hermitian_eigenvalues(d);
  CHECK(eigs[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  Prng rng(7);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 6;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      a.at(i, i) = rng.normal();
      for (std::size_t j = i + 1; j < n; ++j) {
        a.at(i, j) = cplx{rng.normal(), rng.normal()};
        a.at(j, i) = std::conj(a.at(i, j));
      }
    }
    const auto eg = eig_hermitian(a);
    ComplexMatrix recomposed(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          recomposed.at(i, k) +=
              eg.values[j] * eg.vectors.at(i, j) * std::conj(eg.vectors.at(k, j));
    CHECK(a.max_abs_diff(recomposed) < 1e-12);
  }
}

TEST_CASE("gate application identities") {
  // Z(0) is the identity.
  DensityMatrix rho = plus_density();
  rho.apply(gates::z_rotation(Angle::from_index(0)), 0);
  CHECK(rho.matrix().max_abs_diff(plus_density().matrix()) < 1e-15);

  // Z(pi) maps |+> to |->.
  StateVector plus = StateVector::plus_state();
  plus.apply(gates::z_rotation(Angle::from_index(4)), 0);
  const StateVector minus(1, {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)});
  CHECK(std::abs(plus.amplitude(0) - minus.amplitude(0)) < 1e-15);
  CHECK(std::abs(plus.amplitude(1) - minus.amplitude(1)) < 1e-15);

  // Z(theta)|+> = |+_theta>.
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    StateVector v = StateVector::plus_state();
    v.apply(gates::z_rotation(th), 0);
    const StateVector want = StateVector::plus_state(th);
    CHECK(std::abs(v.amplitude(0) - want.amplitude(0)) < 1e-15);
    CHECK(std::abs(v.amplitude(1) - want.amplitude(1)) < 1e-15);
  }
}

TEST_CASE("gates preserve trace and hermiticity on random states") {
  Prng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 3;
    DensityMatrix rho = (t % 2) ? random_mixed_state(n, rng)
                                : DensityMatrix::pure(random_pure_state(n, rng));
    const std::size_t q = rng.uniform_below(n);
    switch (t % 6) {
      case 0: rho.apply(gates::pauli_x(), q); break;
      case 1: rho.apply(gates::pauli_y(), q); break;
      case 2: rho.apply(gates::pauli_z(), q); break;
      case 3: rho.apply(gates::hadamard(), q); break;
      case 4: rho.apply(gates::z_rotation(Angle::from_index(t % 8)), q); break;
      case 5:
        if (n >= 2) {
          const std::size_t q2 = (q + 1) % n;
          rho.apply((t % 2) ? gates::cz() : gates::cnot(), q, q2);
        }
        break;
    }
    CHECK(std::abs(std::real(rho.matrix().trace()) - 1.0) < 1e-12);
    CHECK(rho.matrix().max_abs_diff(rho.matrix().adjoint()) < 1e-12);
  }
}

TEST_CASE("z_rotate_density matches the block form") {
  Prng rng(13);
  // Identity case.
  const DensityMatrix rho0 = random_mixed_state(1, rng);
  CHECK(z_rotate_density(Angle{}, rho0).matrix().max_abs_diff(rho0.matrix()) == 0.0);

  // Single qubit: off-diagonals pick up e^{-i theta} / e^{+i theta}.
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    const DensityMatrix rho = random_mixed_state(1, rng);
    const DensityMatrix rotated = z_rotate_density(th, rho);
    const cplx phase = std::polar(1.0, th.radians());
    CHECK(std::abs(rotated.matrix().at(0, 0) - rho.matrix().at(0, 0)) < 1e-15);
    CHECK(std::abs(rotated.matrix().at(1, 1) - rho.matrix().at(1, 1)) < 1e-15);
    CHECK(std::abs(rotated.matrix().at(0, 1) - std::conj(phase) * rho.matrix().at(0, 1)) <
          1e-15);
    CHECK(std::abs(rotated.matrix().at(1, 0) - phase * rho.matrix().at(1, 0)) < 1e-15);

    // Agreement with unitary conjugation by Z(theta) on the first qubit.
    DensityMatrix viaGate = rho;
    viaGate.apply(gates::z_rotation(th), 0);
    CHECK(rotated.matrix().max_abs_diff(viaGate.matrix()) < 1e-14);
  }
}

TEST_CASE("antipodal rotations sum independent of the angle") {
  Prng rng(17);
  for (int t = 0; t < 200; ++t) {
    const std::size_t aux = t % 3;
    DensityMatrix rho(ComplexMatrix::identity(1));
    if (t % 3 == 0) {
      rho = DensityMatrix::pure(random_pure_state(1 + aux, rng));
    } else if (t % 3 == 1) {
      rho = random_mixed_state(1 + aux, rng);
    } else {
      // Entangled pure state over qubit + aux via a random unitary.
      rho = random_server_input(aux, false, rng);
    }
    const ComplexMatrix reference =
        z_rotate_block_matrix(Angle::from_index(0), rho.matrix()) +
        z_rotate_block_matrix(Angle::from_index(4), rho.matrix());
    for (int k = 1; k < 4; ++k) {
      const Angle th = Angle::from_index(k);
      const ComplexMatrix sum = z_rotate_block_matrix(th, rho.matrix()) +
                                z_rotate_block_matrix(th.antipode(), rho.matrix());
      CHECK(sum.max_abs_diff(reference) < 1e-12);
    }
  }
}

TEST_CASE("rotation inverse composes to identity") {
  Prng rng(19);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix rho = random_mixed_state(1 + t % 2, rng);
    const Angle th = Angle::from_index(t % 8);
    const DensityMatrix back = z_rotate_density(th.negated(), z_rotate_density(th, rho));
    CHECK(back.matrix().max_abs_diff(rho.matrix()) < 1e-12);
  }
}

TEST_CASE("measurement probabilities and eigenstates") {
  Prng rng(23);
  // Eigenstate: |+_delta> measured at delta gives 0 with certainty.
  for (int k : Angle::all_indices()) {
    const Angle delta = Angle::from_index(k);
    QuantumRegister reg;
    const HandleId h = reg.add_pure(StateVector::plus_state(delta), "tester");
    const auto out = reg.measure("tester", h, 0, delta, rng);
    CHECK(out.signal == 0);
    CHECK(out.probability == doctest::Approx(1.0).epsilon(1e-12));
  }

  // |0> against any delta: both outcomes 1/2.
  for (int k : Angle::all_indices()) {
    StateVector zero = StateVector::computational(1, 0);
    CHECK(zero.outcome_probability(0, Angle::from_index(k), 0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(zero.outcome_probability(0, Angle::from_index(k), 1) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }

  // |+> at delta = pi/2: 1/2.
  StateVector plus = StateVector::plus_state();
  CHECK(plus.outcome_probability(0, Angle::from_index(2), 0) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("measurement decomposition reproduces the reduced state") {
  Prng rng(29);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix rho = random_mixed_state(2, rng);
    const Angle delta = Angle::from_index(t % 8);
    const std::size_t q = t % 2;
    DensityMatrix rho0 = rho, rho1 = rho;
    const double p0 = rho0.project_and_remove(q, delta, 0);
    const double p1 = rho1.project_and_remove(q, delta, 1);
    CHECK(p0 + p1 == doctest::Approx(1.0).epsilon(1e-12));
    ComplexMatrix mix = rho0.matrix();
    mix *= cplx{p0, 0.0};
    ComplexMatrix m1 = rho1.matrix();
    m1 *= cplx{p1, 0.0};
    mix += m1;
    const std::size_t keep[1] = {1 - q};
    const DensityMatrix reduced = rho.partial_trace_keep(keep);
    CHECK(mix.max_abs_diff(reduced.matrix()) < 1e-12);
  }
}

TEST_CASE("partial trace basics") {
  Prng rng(31);
  // Product state: tracing out B returns A.
  const DensityMatrix a = random_mixed_state(1, rng);
  const DensityMatrix b = random_mixed_state(1, rng);
  DensityMatrix ab = a;
  ab.tensor_with(b);
  const std::size_t keepA[1] = {0};
  CHECK(ab.partial_trace_keep(keepA).matrix().max_abs_diff(a.matrix()) < 1e-14);
  const std::size_t keepB[1] = {1};
  CHECK(ab.partial_trace_keep(keepB).matrix().max_abs_diff(b.matrix()) < 1e-14);

  // Bell state: each side is maximally mixed.
  const double s = 1.0 / std::sqrt(2.0);
  StateVector bell(2, {s, 0.0, 0.0, s});
  const DensityMatrix bell_dm = DensityMatrix::pure(bell);
  CHECK(bell_dm.partial_trace_keep(keepA)
            .matrix()
            .max_abs_diff(DensityMatrix::maximally_mixed(1).matrix()) < 1e-14);

  // Trace preserved.
  const DensityMatrix big = random_mixed_state(3, rng);
  const std::size_t keep2[2] = {2, 0};
  const DensityMatrix red = big.partial_trace_keep(keep2);
  CHECK(std::real(red.matrix().trace()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial trace commutes with operations on kept subsystems") {
  Prng rng(37);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_mixed_state(3, rng);
    const std::size_t keep[2] = {0, 1};

    DensityMatrix op_then_trace = rho;
    op_then_trace.apply(gates::hadamard(), 0);
    op_then_trace.apply(gates::cz(), 0, 1);
    DensityMatrix reduced1 = op_then_trace.partial_trace_keep(keep);

    DensityMatrix trace_then_op = rho.partial_trace_keep(keep);
    trace_then_op.apply(gates::hadamard(), 0);
    trace_then_op.apply(gates::cz(), 0, 1);

    CHECK(reduced1.matrix().max_abs_diff(trace_then_op.matrix()) < 1e-12);
  }
}

TEST_CASE("trace distance values") {
  const DensityMatrix zero = DensityMatrix::pure(StateVector::computational(1, 0));
  const DensityMatrix one = DensityMatrix::pure(StateVector::computational(1, 1));
  CHECK(trace_distance(zero, zero) == 0.0);
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
  // Independent eigenvalue computation for (|0><0|, |+><+|) gives sqrt(2)/2.
  CHECK(trace_distance(zero, plus_density()) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(trace_distance(zero, DensityMatrix::maximally_mixed(2)),
                  std::invalid_argument);
}

TEST_CASE("register handle ownership and transfer") {
  Prng rng(41);
  QuantumRegister reg;
  const HandleId h = reg.add_pure(StateVector::plus_state(), "client");
  CHECK(reg.holder(h) == "client");
  // Operating without holding the handle is rejected.
  CHECK_THROWS_AS(reg.apply_gate("server", h, gates::pauli_x(), 0),
                  std::invalid_argument);
  reg.transfer(h, "server");
  reg.apply_gate("server", h, gates::pauli_x(), 0);
  CHECK(reg.is_pure());

  // Measuring removes the qubit from register and handle.
  const auto out = reg.measure("server", h, 0, Angle{}, rng);
  CHECK((out.signal == 0 || out.signal == 1));
  CHECK(reg.total_qubits() == 0);
  CHECK_THROWS_AS(reg.handle_qubit_count(h), std::invalid_argument);
}

TEST_CASE("register split and merge keep the partition") {
  QuantumRegister reg;
  const HandleId h = reg.add_pure(StateVector(2), "server");
  CHECK(reg.handle_qubit_count(h) == 2);
  const std::size_t first[1] = {0};
  const HandleId h2 = reg.split(h, first);
  CHECK(reg.handle_qubit_count(h) == 1);
  CHECK(reg.handle_qubit_count(h2) == 1);
  reg.merge(h2, h);
  CHECK(reg.handle_qubit_count(h2) == 2);
  CHECK_THROWS_AS(reg.handle_qubit_count(h), std::invalid_argument);
}

TEST_CASE("register qubit cap is enforced") {
  QuantumRegister reg(2);
  reg.add_pure(StateVector(2), "a");
  CHECK_THROWS_AS(reg.add_pure(StateVector(1), "a"), std::invalid_argument);
}

TEST_CASE("kraus selection on pure and mixed paths agree") {
  Prng rng(43);
  const ComplexMatrix m = sqrt_psd(gates::plus_projector(Angle::from_index(3)));
  const StateVector psi = random_pure_state(2, rng);

  QuantumRegister pure_reg;
  const HandleId hp = pure_reg.add_pure(psi, "x");
  const std::size_t t0[1] = {0};
  const double p_pure = pure_reg.apply_kraus("x", hp, m, t0);

  QuantumRegister mixed_reg;
  const HandleId hm = mixed_reg.add_mixed(DensityMatrix::pure(psi), "x");
  const double p_mixed = mixed_reg.apply_kraus("x", hm, m, t0);

  CHECK(p_pure == doctest::Approx(p_mixed).epsilon(1e-12));
  CHECK(pure_reg.full_density().matrix().max_abs_diff(
            mixed_reg.full_density().matrix()) < 1e-12);
}

TEST_CASE("density matrix validity checks") {
  CHECK(plus_density().is_valid());
  ComplexMatrix bad = plus_density().matrix();
  bad.at(0, 1) = 0.9;
  CHECK_FALSE(DensityMatrix(bad).is_valid());
  ComplexMatrix not_trace_one = ComplexMatrix::identity(2);
  CHECK_FALSE(DensityMatrix(not_trace_one).is_valid());
  CHECK_THROWS_AS(z_rotate_block_matrix(Angle{}, ComplexMatrix(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("prng determinism and fork independence") {
  Prng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Prng c(123);
  Prng fork1 = c.fork(1);
  Prng c2(123);
  Prng fork2 = c2.fork(1);
  for (int i = 0; i < 10; ++i) CHECK(fork1.next_u64() == fork2.next_u64());
}
