#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>

#include "qesim/enclave/crypto.hpp"

namespace qesim::enclave {

// Enclave program aborts carry the label the protocol reports.
class EnclaveAbort : public std::runtime_error {
 public:
  EnclaveAbort(std::string label_, const std::string& what)
      : std::runtime_error(what), label(std::move(label_)) {}
  std::string label;
};

// A program installed into the registry: pure transition on (input, mem).
// mem is owned by the registry entry and round-trips as opaque bytes.
class EnclaveProgram {
 public:
  virtual ~EnclaveProgram() = default;
  virtual std::string id() const = 0;
  virtual Bytes resume(const Bytes& input, Bytes& mem) = 0;
};

// Attested-execution registry: one manufacturer key pair, a table of
// installed enclaves keyed by (eid, party), and signed resume outputs.
class AttestationRegistry {
 public:
  AttestationRegistry(const CryptoSuite& suite, Bytes session_id,
                      std::set<std::string> registered_parties,
                      std::set<std::string> honest_parties, Prng rng);

  const Bytes& getpk() const { return keys_.public_key; }
  const Bytes& session_id() const { return sid_; }

  // Fresh eid; honest parties must pass idx == session id.
  Bytes install(const std::string& party, const Bytes& idx,
                std::shared_ptr<EnclaveProgram> prog);

  struct ResumeOutput {
    Bytes output;
    Bytes signature;  // over attestation_message(idx, eid, prog id, output)
  };
  ResumeOutput resume(const std::string& party, const Bytes& eid, const Bytes& input);

  static Bytes attestation_message(const Bytes& idx, const Bytes& eid,
                                   const std::string& prog_id, const Bytes& output);

 private:
  struct Entry {
    Bytes idx;
    std::shared_ptr<EnclaveProgram> prog;
    Bytes mem;
  };

  const CryptoSuite suite_;
  Bytes sid_;
  std::set<std::string> registered_;
  std::set<std::string> honest_;
  SignatureScheme::KeyPair keys_;
  Prng rng_;
  std::map<std::pair<Bytes, std::string>, Entry> table_;
};

}  // namespace qesim::enclave
