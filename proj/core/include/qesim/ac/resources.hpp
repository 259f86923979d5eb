#pragma once

#include <optional>

#include "qesim/ac/weak_correlation.hpp"
#include "qesim/angle.hpp"
#include "qesim/prng.hpp"
#include "qesim/quantum_register.hpp"

namespace qesim::ac {

// Two-interface resources: A faces the client, B faces the server. The
// filter bit c at B defaults to 0 (honest behavior); dishonest activations
// are the explicit *_dishonest entry points. Branch variants take the angle
// (and, where applicable, the outcome) instead of drawing it, so the
// distinguisher harness can enumerate output states exactly.
enum class Interface { A, B };

inline constexpr const char* kResourceParty = "resource";
inline constexpr const char* kServerParty = "server";
inline constexpr const char* kClientParty = "client";

// Remote state rotation: rotates a server-supplied qubit in place by a
// uniformly drawn grid angle and reveals the angle only at interface A.
class RsrResource {
 public:
  // Sampled activation. The handle must be a held single-qubit handle; it is
  // taken by the resource, rotated, and returned to its original holder.
  Angle rotate(QuantumRegister& reg, HandleId qubit, Prng& rng) const;

  // One enumeration branch: same update for a fixed theta.
  void rotate_branch(QuantumRegister& reg, HandleId qubit, Angle theta) const;
};

// Random remote state preparation for blindness.
class RspResource {
 public:
  struct Output {
    Angle theta;       // delivered at A
    HandleId state;    // delivered at B
  };

  // c = 0: |+_theta><+_theta| at B.
  Output prepare_honest(QuantumRegister& reg, Prng& rng) const;
  Output prepare_honest_branch(QuantumRegister& reg, Angle theta) const;

  // c = 1: validates the family (weak correlation), outputs rho^theta at B.
  // Throws InvalidFamilyError for a rejected family; the resource state is
  // unchanged and the call may be retried.
  Output prepare_dishonest(QuantumRegister& reg, const StateFamily& family,
                           Prng& rng, double tol = 1e-9) const;
  Output prepare_dishonest_branch(QuantumRegister& reg, const StateFamily& family,
                                  Angle theta, double tol = 1e-9) const;
};

// Measurement-based remote state preparation for blindness.
class MrspResource {
 public:
  struct Output {
    Angle theta_prime;  // theta or theta+pi, delivered at A
    Angle drawn_theta;
    double probability = 1.0;  // of the realized outcome given drawn_theta
  };

  struct HonestOutput {
    Angle theta;
    HandleId state;
  };

  // c = 0 mirrors RSP's honest branch.
  HonestOutput prepare_honest(QuantumRegister& reg, Prng& rng) const;
  HonestOutput prepare_honest_branch(QuantumRegister& reg, Angle theta) const;

  // c = 1, standalone form: applies the two-outcome measurement
  // {Pi_theta, Pi_{theta+pi}} to rho by the Born rule.
  struct MeasuredState {
    Angle theta_prime;
    Angle drawn_theta;
    double probability = 1.0;
    DensityMatrix post_state;
  };
  MeasuredState measure(const ProjectorFamily& projectors, const DensityMatrix& rho,
                        Prng& rng, double tol = 1e-9) const;
  MeasuredState measure_branch(const ProjectorFamily& projectors,
                               const DensityMatrix& rho, Angle drawn_theta,
                               bool antipodal_outcome, double tol = 1e-9) const;

  // c = 1, register form: the measured system is a handle (possibly entangled
  // with qubits the server kept). The post-measurement state stays in the
  // register; the measured qubits are not removed.
  Output measure_handle(QuantumRegister& reg, HandleId system,
                        const ProjectorFamily& projectors, Prng& rng,
                        double tol = 1e-9) const;
  Output measure_handle_branch(QuantumRegister& reg, HandleId system,
                               const ProjectorFamily& projectors, Angle drawn_theta,
                               bool antipodal_outcome, double tol = 1e-9) const;
};

// The simulator sitting at interface B of MRSP_B: takes the server's
// single-qubit handle, CNOTs it onto a fresh |0> ancilla, and submits the
// ancilla to the resource with the family Pi_theta = |+_{-theta}><+_{-theta}|.
class SimulatorSigmaB {
 public:
  static ProjectorFamily projector_family();

  struct AttachResult {
    HandleId server_qubit;  // replaces the handle passed in
    HandleId ancilla;       // held by the resource party
  };

  // The input handle is consumed; use the returned server_qubit afterwards.
  AttachResult attach(QuantumRegister& reg, HandleId server_qubit) const;
};

// Trivial protocol converters: pi_A forwards the angle, pi_B enforces c=0
// and feeds |+> into RSR. Kept as named types so compositions read like the
// construction they implement.
struct PiA {
  Angle forward(Angle theta) const { return theta; }
};

struct PiB {
  // Honest server preparation: a fresh |+> qubit owned by the server.
  HandleId prepare_plus(QuantumRegister& reg) const;
};

}  // namespace qesim::ac
