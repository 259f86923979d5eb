#include "qesim/ubqc/session.hpp"

#include <stdexcept>

#include "qesim/ac/resources.hpp"
#include "qesim/gates.hpp"
#include "qesim/quantum_register.hpp"

namespace qesim::ubqc {

namespace {

constexpr const char* kClient = "client";
constexpr const char* kServer = "server";

std::string vertex_attr(Vertex v) {
  return std::to_string(v.column) + "," + std::to_string(v.row);
}

}  // namespace

RunResult run_ubqc(const Pattern& pattern, const RunOptions& options, Prng& rng) {
  const PatternGraph& g = pattern.graph();
  const std::size_t rows = static_cast<std::size_t>(g.rows());
  const std::size_t measured = g.measured_count();
  if (options.forced_signals && options.forced_signals->size() != measured)
    throw std::invalid_argument("forced signal count mismatch");
  if (g.vertex_count() > options.max_qubits)
    throw std::invalid_argument("pattern exceeds the register qubit cap");

  RunResult result;
  QuantumRegister reg(options.max_qubits);

  // Preparation: one hidden angle per measured vertex, drawn in column-major
  // order by whichever party the preparation mode assigns it to.
  std::vector<Angle> thetas(measured);
  std::vector<HandleId> slot_handles(g.vertex_count());
  const auto order = g.measured_vertices();
  for (std::size_t i = 0; i < measured; ++i) {
    switch (options.preparation) {
      case Preparation::DirectQuantum: {
        thetas[i] = Angle::uniform(rng);
        const HandleId h = reg.add_pure(StateVector::plus_state(thetas[i]), kClient);
        reg.transfer(h, kServer);
        slot_handles[i] = h;
        break;
      }
      case Preparation::Rsp: {
        const auto out = ac::RspResource{}.prepare_honest(reg, rng);
        thetas[i] = out.theta;
        slot_handles[i] = out.state;
        break;
      }
      case Preparation::Rsr: {
        const HandleId h = ac::PiB{}.prepare_plus(reg);
        thetas[i] = ac::RsrResource{}.rotate(reg, h, rng);
        slot_handles[i] = h;
        break;
      }
    }
  }

  // Server builds the output layer and entangles everything, once per edge.
  for (std::size_t r = 0; r < rows; ++r)
    slot_handles[measured + r] = reg.add_pure(StateVector::plus_state(), kServer);
  const HandleId workspace = slot_handles[0];
  for (std::size_t i = 1; i < g.vertex_count(); ++i)
    reg.merge(workspace, slot_handles[i]);

  auto vertex_slot = [&](Vertex v) {
    return static_cast<std::size_t>(v.column) * rows + static_cast<std::size_t>(v.row);
  };
  std::vector<bool> slot_removed(g.vertex_count(), false);
  auto handle_pos = [&](std::size_t slot) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < slot; ++i)
      if (!slot_removed[i]) ++pos;
    return pos;
  };

  for (const auto& [a, b] : g.edges()) {
    const std::size_t t[2] = {handle_pos(vertex_slot(a)), handle_pos(vertex_slot(b))};
    reg.apply_gate(kServer, workspace, gates::cz(), t);
  }

  // Interaction: adapted angle, blinding, measurement, r-flip.
  result.recorded_signals.assign(measured, 0);
  result.reported_signals.assign(measured, 0);
  result.deltas.reserve(measured);
  for (std::size_t i = 0; i < measured; ++i) {
    int s_x = 0, s_z = 0;
    for (std::size_t d : pattern.x_deps(i)) s_x ^= result.recorded_signals[d];
    for (std::size_t d : pattern.z_deps(i)) s_z ^= result.recorded_signals[d];
    const Angle phi_prime = updated_angle(pattern.phi_at(i), s_x, s_z);
    const int r = rng.bit() ? 1 : 0;
    const Angle delta = delta_angle(phi_prime, thetas[i], r);
    result.deltas.push_back(delta);
    result.r_bits.push_back(r);

    auto& delta_rec = result.transcript.append(kClient, "delta");
    delta_rec.attrs.emplace_back("vertex", vertex_attr(order[i]));
    delta_rec.attrs.emplace_back("k", std::to_string(delta.index()));

    const std::size_t pos = handle_pos(vertex_slot(order[i]));
    QuantumRegister::MeasureOutcome outcome;
    if (options.forced_signals) {
      const int want_recorded = (*options.forced_signals)[i];
      outcome = reg.measure_forced(kServer, workspace, pos, delta, want_recorded ^ r);
    } else {
      outcome = reg.measure(kServer, workspace, pos, delta, rng);
    }
    slot_removed[vertex_slot(order[i])] = true;
    result.branch_probability *= outcome.probability;
    result.reported_signals[i] = outcome.signal;
    result.recorded_signals[i] = outcome.signal ^ r;

    auto& sig_rec = result.transcript.append(kServer, "signal");
    sig_rec.attrs.emplace_back("vertex", vertex_attr(order[i]));
    sig_rec.attrs.emplace_back("s", std::to_string(outcome.signal));
  }

  // Output corrections.
  std::vector<int> out_sx(rows, 0), out_sz(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t d : pattern.output_x_deps(r)) out_sx[r] ^= result.recorded_signals[d];
    for (std::size_t d : pattern.output_z_deps(r)) out_sz[r] ^= result.recorded_signals[d];
  }

  if (options.classical_output) {
    result.output_bits.assign(rows, 0);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto out = reg.measure_z(kServer, workspace, 0, rng);
      result.branch_probability *= out.probability;
      result.output_bits[r] = out.signal ^ out_sx[r];
      auto& rec = result.transcript.append(kServer, "output-bit");
      rec.attrs.emplace_back("row", std::to_string(r));
      rec.attrs.emplace_back("s", std::to_string(out.signal));
    }
    result.client_output = DensityMatrix(ComplexMatrix::identity(1));
  } else {
    reg.transfer(workspace, kClient);
    result.transcript.append(kServer, "output-transfer");
    for (std::size_t r = 0; r < rows; ++r) {
      if (out_sx[r]) reg.apply_gate(kClient, workspace, gates::pauli_x(), r);
      if (out_sz[r]) reg.apply_gate(kClient, workspace, gates::pauli_z(), r);
    }
    result.client_output = reg.reduced_state(workspace);
  }
  return result;
}

std::vector<RunResult> enumerate_signal_branches(const Pattern& pattern,
                                                 Preparation preparation,
                                                 std::uint64_t seed,
                                                 std::size_t max_qubits) {
  const std::size_t measured = pattern.graph().measured_count();
  std::vector<RunResult> out;
  out.reserve(std::size_t{1} << measured);
  for (std::size_t b = 0; b < (std::size_t{1} << measured); ++b) {
    RunOptions opt;
    opt.preparation = preparation;
    opt.max_qubits = max_qubits;
    std::vector<int> forced(measured);
    for (std::size_t i = 0; i < measured; ++i)
      forced[i] = static_cast<int>((b >> (measured - 1 - i)) & 1);
    opt.forced_signals = std::move(forced);
    Prng rng(seed);
    out.push_back(run_ubqc(pattern, opt, rng));
  }
  return out;
}

}  // namespace qesim::ubqc
