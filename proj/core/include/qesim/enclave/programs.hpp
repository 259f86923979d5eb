#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qesim/angle.hpp"
#include "qesim/enclave/attestation.hpp"
#include "qesim/quantum_register.hpp"

namespace qesim::enclave {

// Wire encodings shared by the programs and the client.
Bytes encode_i64_list(const std::vector<std::int64_t>& values);
std::vector<std::int64_t> decode_i64_list(const Bytes& bytes);

// (f, x) pairs travel as a named function plus an integer-list argument.
Bytes encode_function_call(const std::string& name, const std::vector<std::int64_t>& x);
std::pair<std::string, std::vector<std::int64_t>> decode_function_call(const Bytes& bytes);

// Registered pure functions for the outsourcing program.
bool is_outsrc_function(const std::string& name);
std::vector<std::int64_t> apply_outsrc_function(const std::string& name,
                                                const std::vector<std::int64_t>& x);
std::vector<std::string> outsrc_function_names();

// Registered angle functions for the rotation program: x -> n grid angles.
bool is_angle_function(const std::string& name);
std::vector<Angle> apply_angle_function(const std::string& name,
                                        const std::vector<std::int64_t>& x,
                                        std::size_t qubit_count);

// Enclave inputs: [tag u8] body, tag 1 = keyex (g^a), tag 2 = compute (ct).
Bytes encode_keyex_input(std::uint64_t g_a);
Bytes encode_compute_input(const Bytes& ct);

// Access to the session's source qubits: the rotation program applies its
// angles to whatever states arrive here, adversarial or not.
struct QuantumSourcePort {
  QuantumRegister* reg = nullptr;
  std::vector<HandleId> qubits;  // one single-qubit handle each, enclave-held
};

// Key exchange then encrypted angle computation; rotations are applied to
// the source qubits as a side effect of each compute call. The Prng supplies
// the key-exchange exponent; inject a seeded one for reproducible sessions.
class ProgRsr final : public EnclaveProgram {
 public:
  ProgRsr(CryptoSuite suite, QuantumSourcePort port, Prng rng)
      : suite_(std::move(suite)), port_(std::move(port)), rng_(rng) {}
  std::string id() const override { return "prog-rsr"; }
  Bytes resume(const Bytes& input, Bytes& mem) override;

  const std::vector<Angle>& last_angles() const { return last_angles_; }

 private:
  CryptoSuite suite_;
  QuantumSourcePort port_;
  Prng rng_;
  std::vector<Angle> last_angles_;
};

// Classical outsourcing: y = f(x) under authenticated encryption.
class ProgOutsrc final : public EnclaveProgram {
 public:
  ProgOutsrc(CryptoSuite suite, Prng rng) : suite_(std::move(suite)), rng_(rng) {}
  std::string id() const override { return "prog-outsrc"; }
  Bytes resume(const Bytes& input, Bytes& mem) override;

 private:
  CryptoSuite suite_;
  Prng rng_;
};

}  // namespace qesim::enclave
