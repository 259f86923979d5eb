#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qesim/density_matrix.hpp"
#include "qesim/prng.hpp"
#include "qesim/state_vector.hpp"

namespace qesim {

using HandleId = std::size_t;

// One shared quantum state plus ownership bookkeeping. "Sending a qubit"
// moves a handle (an ordered set of qubit labels) to another holder; the
// underlying state is never copied, so cloning is impossible by construction.
// Pure states ride a StateVector until something mixed is tensored in.
class QuantumRegister {
 public:
  explicit QuantumRegister(std::size_t max_qubits = 12);

  HandleId add_pure(const StateVector& psi, std::string holder);
  HandleId add_mixed(const DensityMatrix& rho, std::string holder);

  void transfer(HandleId h, std::string new_holder);

  // Carve the listed qubits (positions within the handle) out into a new
  // handle with the same holder; they keep their listed order.
  HandleId split(HandleId h, std::span<const std::size_t> qubits_within);

  // Append all qubits of `src` to `dst` (same holder required); `src` dies.
  void merge(HandleId dst, HandleId src);

  const std::string& holder(HandleId h) const;
  std::size_t handle_qubit_count(HandleId h) const;
  std::size_t total_qubits() const { return labels_.size(); }
  bool is_pure() const;

  void apply_gate(std::string_view as, HandleId h, const ComplexMatrix& u,
                  std::span<const std::size_t> targets_within);
  void apply_gate(std::string_view as, HandleId h, const ComplexMatrix& u,
                  std::size_t target_within);

  // Selective (non-unitary) update rho -> M rho M^dagger / p with M embedded
  // at the targets; returns the outcome probability p. Qubits are kept.
  double apply_kraus(std::string_view as, HandleId h, const ComplexMatrix& m,
                     std::span<const std::size_t> targets_within);

  struct MeasureOutcome {
    int signal = 0;          // 0 <=> |+_delta>, 1 <=> |-_delta>
    double probability = 0;  // of the realized outcome
  };

  // Born-rule measurement in the |+_delta>/|-_delta> basis; the measured
  // qubit is removed from the register and the handle.
  MeasureOutcome measure(std::string_view as, HandleId h, std::size_t qubit_within,
                         Angle delta, Prng& rng);
  MeasureOutcome measure_forced(std::string_view as, HandleId h,
                                std::size_t qubit_within, Angle delta, int outcome);
  MeasureOutcome measure_z(std::string_view as, HandleId h, std::size_t qubit_within,
                           Prng& rng);
  MeasureOutcome measure_z_forced(std::string_view as, HandleId h,
                                  std::size_t qubit_within, int outcome);

  // Reduced state of the handle's qubits, in handle order.
  DensityMatrix reduced_state(HandleId h) const;
  DensityMatrix full_density() const;

 private:
  struct Handle {
    std::vector<std::uint32_t> labels;
    std::string holder;
    bool alive = true;
  };

  std::size_t max_qubits_;
  std::variant<StateVector, DensityMatrix> state_;
  std::vector<std::uint32_t> labels_;  // position -> label
  std::uint32_t next_label_ = 0;
  std::vector<Handle> handles_;

  Handle& checked(HandleId h);
  const Handle& checked(HandleId h) const;
  void require_holder(std::string_view as, const Handle& h) const;
  std::size_t position_of(std::uint32_t label) const;
  void demote_to_density();
  MeasureOutcome do_measure(HandleId h, std::size_t qubit_within,
                            std::optional<Angle> delta, std::optional<int> forced,
                            Prng* rng);
};

}  // namespace qesim
