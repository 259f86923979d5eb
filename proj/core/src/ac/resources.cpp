#include "qesim/ac/resources.hpp"

#include <stdexcept>

#include "qesim/gates.hpp"

namespace qesim::ac {

Angle RsrResource::rotate(QuantumRegister& reg, HandleId qubit, Prng& rng) const {
  const Angle theta = Angle::uniform(rng);
  rotate_branch(reg, qubit, theta);
  return theta;
}

void RsrResource::rotate_branch(QuantumRegister& reg, HandleId qubit,
                                Angle theta) const {
  if (reg.handle_qubit_count(qubit) != 1)
    throw std::invalid_argument("rsr requires a single-qubit handle");
  const std::string original_holder = reg.holder(qubit);
  reg.transfer(qubit, kResourceParty);
  reg.apply_gate(kResourceParty, qubit, gates::z_rotation(theta), 0);
  reg.transfer(qubit, original_holder);
}

RspResource::Output RspResource::prepare_honest(QuantumRegister& reg, Prng& rng) const {
  return prepare_honest_branch(reg, Angle::uniform(rng));
}

RspResource::Output RspResource::prepare_honest_branch(QuantumRegister& reg,
                                                       Angle theta) const {
  const HandleId h = reg.add_pure(StateVector::plus_state(theta), kServerParty);
  return {theta, h};
}

RspResource::Output RspResource::prepare_dishonest(QuantumRegister& reg,
                                                   const StateFamily& family,
                                                   Prng& rng, double tol) const {
  return prepare_dishonest_branch(reg, family, Angle::uniform(rng), tol);
}

RspResource::Output RspResource::prepare_dishonest_branch(QuantumRegister& reg,
                                                          const StateFamily& family,
                                                          Angle theta, double tol) const {
  if (!weak_correlation_check(family, tol))
    throw InvalidFamilyError("state family fails the weak correlation conditions");
  const HandleId h = reg.add_mixed(DensityMatrix{family.at(theta)}, kServerParty);
  return {theta, h};
}

MrspResource::HonestOutput MrspResource::prepare_honest(QuantumRegister& reg,
                                                        Prng& rng) const {
  return prepare_honest_branch(reg, Angle::uniform(rng));
}

MrspResource::HonestOutput MrspResource::prepare_honest_branch(QuantumRegister& reg,
                                                               Angle theta) const {
  const HandleId h = reg.add_pure(StateVector::plus_state(theta), kServerParty);
  return {theta, h};
}

MrspResource::MeasuredState MrspResource::measure(const ProjectorFamily& projectors,
                                                  const DensityMatrix& rho, Prng& rng,
                                                  double tol) const {
  projectors.validate(tol);
  const Angle theta = Angle::uniform(rng);
  // Born rule for the outcome labeled theta.
  const ComplexMatrix& pi = projectors.at(theta);
  if (pi.rows() != rho.dim())
    throw std::invalid_argument("projector and state dimensions differ");
  const double p_theta = std::real((pi * rho.matrix()).trace());
  const bool antipodal = rng.uniform01() >= p_theta;
  auto out = measure_branch(projectors, rho, theta, antipodal, tol);
  return out;
}

MrspResource::MeasuredState MrspResource::measure_branch(
    const ProjectorFamily& projectors, const DensityMatrix& rho, Angle drawn_theta,
    bool antipodal_outcome, double tol) const {
  projectors.validate(tol);
  const Angle label = antipodal_outcome ? drawn_theta.antipode() : drawn_theta;
  const ComplexMatrix& pi = projectors.at(label);
  if (pi.rows() != rho.dim())
    throw std::invalid_argument("projector and state dimensions differ");
  const ComplexMatrix m = sqrt_psd(pi, tol);
  ComplexMatrix post = m * rho.matrix() * m.adjoint();
  const double p = std::real(post.trace());
  if (p < 1e-300) throw std::runtime_error("measurement outcome has zero probability");
  post *= cplx{1.0 / p, 0.0};
  return {label, drawn_theta, p, DensityMatrix(std::move(post))};
}

MrspResource::Output MrspResource::measure_handle(QuantumRegister& reg, HandleId system,
                                                  const ProjectorFamily& projectors,
                                                  Prng& rng, double tol) const {
  projectors.validate(tol);
  const Angle theta = Angle::uniform(rng);
  // Probability of the theta-labeled outcome on the handle's qubits.
  const DensityMatrix reduced = reg.reduced_state(system);
  const ComplexMatrix& pi = projectors.at(theta);
  if (pi.rows() != reduced.dim())
    throw std::invalid_argument("projector and handle dimensions differ");
  const double p_theta = std::real((pi * reduced.matrix()).trace());
  const bool antipodal = rng.uniform01() >= p_theta;
  return measure_handle_branch(reg, system, projectors, theta, antipodal, tol);
}

MrspResource::Output MrspResource::measure_handle_branch(
    QuantumRegister& reg, HandleId system, const ProjectorFamily& projectors,
    Angle drawn_theta, bool antipodal_outcome, double tol) const {
  projectors.validate(tol);
  const Angle label = antipodal_outcome ? drawn_theta.antipode() : drawn_theta;
  const ComplexMatrix m = sqrt_psd(projectors.at(label), tol);
  std::vector<std::size_t> targets(reg.handle_qubit_count(system));
  for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = i;
  const double p = reg.apply_kraus(reg.holder(system), system, m, targets);
  return {label, drawn_theta, p};
}

ProjectorFamily SimulatorSigmaB::projector_family() {
  ProjectorFamily f;
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    f.set(th, gates::plus_projector(th.negated()));
  }
  return f;
}

SimulatorSigmaB::AttachResult SimulatorSigmaB::attach(QuantumRegister& reg,
                                                      HandleId server_qubit) const {
  if (reg.handle_qubit_count(server_qubit) != 1)
    throw std::invalid_argument("simulator expects a single-qubit handle");
  const std::string original_holder = reg.holder(server_qubit);
  const HandleId ancilla = reg.add_pure(StateVector(1), kResourceParty);

  // CNOT with the server's qubit as control, the |0> ancilla as target;
  // performed while holding both handles, then ownership is restored.
  reg.transfer(server_qubit, kResourceParty);
  const HandleId joint = reg.split(server_qubit, std::array<std::size_t, 1>{0});
  reg.merge(joint, ancilla);
  reg.apply_gate(kResourceParty, joint, gates::cnot(),
                 std::array<std::size_t, 2>{0, 1});
  const HandleId back = reg.split(joint, std::array<std::size_t, 1>{0});
  reg.transfer(back, original_holder);
  // what is left of `joint` is the ancilla, held by the resource party
  return {back, joint};
}

HandleId PiB::prepare_plus(QuantumRegister& reg) const {
  return reg.add_pure(StateVector::plus_state(), kServerParty);
}

}  // namespace qesim::ac
