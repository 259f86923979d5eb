#include "qesim/ac/equivalence.hpp"

#include <stdexcept>

namespace qesim::ac {

namespace {

constexpr double kUniform = 1.0 / 8.0;

CqState rsr_honest_filtered(std::size_t max_qubits) {
  CqState cq;
  RsrResource rsr;
  PiB pi_b;
  for (int k : Angle::all_indices()) {
    const Angle theta = Angle::from_index(k);
    QuantumRegister reg(max_qubits);
    const HandleId qubit = pi_b.prepare_plus(reg);
    rsr.rotate_branch(reg, qubit, theta);
    cq.add_contribution(theta, kUniform, reg.reduced_state(qubit).matrix());
  }
  return cq;
}

CqState mrsp_filtered(std::size_t max_qubits) {
  CqState cq;
  MrspResource mrsp;
  for (int k : Angle::all_indices()) {
    const Angle theta = Angle::from_index(k);
    QuantumRegister reg(max_qubits);
    const auto out = mrsp.prepare_honest_branch(reg, theta);
    cq.add_contribution(out.theta, kUniform, reg.reduced_state(out.state).matrix());
  }
  return cq;
}

CqState rsr_with_server_input(const DensityMatrix& input, std::size_t max_qubits) {
  CqState cq;
  RsrResource rsr;
  for (int k : Angle::all_indices()) {
    const Angle theta = Angle::from_index(k);
    QuantumRegister reg(max_qubits);
    const HandleId full = reg.add_mixed(input, kServerParty);
    const HandleId qubit = reg.split(full, std::array<std::size_t, 1>{0});
    rsr.rotate_branch(reg, qubit, theta);
    cq.add_contribution(theta, kUniform, reg.full_density().matrix());
  }
  return cq;
}

CqState mrsp_with_simulator(const DensityMatrix& input, std::size_t max_qubits) {
  CqState cq;
  MrspResource mrsp;
  SimulatorSigmaB sigma;
  const ProjectorFamily family = SimulatorSigmaB::projector_family();
  for (int k : Angle::all_indices()) {
    const Angle theta = Angle::from_index(k);
    for (bool antipodal : {false, true}) {
      QuantumRegister reg(max_qubits);
      const HandleId full = reg.add_mixed(input, kServerParty);
      const HandleId qubit = reg.split(full, std::array<std::size_t, 1>{0});
      const auto attached = sigma.attach(reg, qubit);
      const auto out =
          mrsp.measure_handle_branch(reg, attached.ancilla, family, theta, antipodal);
      // Server view: everything but the ancilla (which stays with the
      // resource), i.e. the first n-1 register qubits in input order.
      std::vector<std::size_t> keep(reg.total_qubits() - 1);
      for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
      const DensityMatrix server_view = reg.full_density().partial_trace_keep(keep);
      cq.add_contribution(out.theta_prime, kUniform * out.probability,
                          server_view.matrix());
    }
  }
  return cq;
}

}  // namespace

CqState output_cq_state(SystemKind kind, const DensityMatrix* server_input,
                        std::size_t max_qubits) {
  switch (kind) {
    case SystemKind::RsrHonestFiltered:
      return rsr_honest_filtered(max_qubits);
    case SystemKind::MrspFiltered:
      return mrsp_filtered(max_qubits);
    case SystemKind::RsrWithServerInput:
      if (!server_input)
        throw std::invalid_argument("dishonest composition needs a server input");
      return rsr_with_server_input(*server_input, max_qubits);
    case SystemKind::MrspWithSimulator:
      if (!server_input)
        throw std::invalid_argument("dishonest composition needs a server input");
      return mrsp_with_simulator(*server_input, max_qubits);
  }
  throw std::invalid_argument("unsupported composition");
}

StateFamily branch_family(const CqState& cq) {
  StateFamily f;
  for (int k : Angle::all_indices()) {
    const Angle th = Angle::from_index(k);
    f.set(th, cq.branch(th).matrix());
  }
  return f;
}

double correctness_distance(std::size_t max_qubits) {
  return distinguish(output_cq_state(SystemKind::RsrHonestFiltered, nullptr, max_qubits),
                     output_cq_state(SystemKind::MrspFiltered, nullptr, max_qubits));
}

double security_distance(const DensityMatrix& server_input, std::size_t max_qubits) {
  return distinguish(
      output_cq_state(SystemKind::RsrWithServerInput, &server_input, max_qubits),
      output_cq_state(SystemKind::MrspWithSimulator, &server_input, max_qubits));
}

EquivalenceSuiteResult run_equivalence_suite(int trials, Prng& rng,
                                             std::size_t max_qubits,
                                             double validity_tol) {
  EquivalenceSuiteResult result;
  result.correctness = correctness_distance(max_qubits);
  result.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::size_t aux = static_cast<std::size_t>(t % 3);  // 0, 1, 2 aux qubits
    const bool mixed = (t % 2) == 1;
    const DensityMatrix input = random_server_input(aux, mixed, rng);
    const double d = security_distance(input, max_qubits);
    result.max_security = std::max(result.max_security, d);

    const CqState rsr_out =
        output_cq_state(SystemKind::RsrWithServerInput, &input, max_qubits);
    if (!weak_correlation_check(branch_family(rsr_out), validity_tol))
      result.weak_correlation_all_passed = false;
  }
  return result;
}

}  // namespace qesim::ac
