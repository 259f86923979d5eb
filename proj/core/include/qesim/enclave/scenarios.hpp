#pragma once

#include "qesim/enclave/protocol.hpp"

namespace qesim::enclave {

enum class ScenarioKind {
  Honest,
  ForgeAttestation,  // flip a bit in the attestation signature
  TamperCt,          // flip a bit in the compute-request ciphertext
  ReplayCt,          // re-submit an accepted ciphertext to the enclave
  SubstituteCtOut,   // replace the compute response with forged bytes
};

ScenarioKind scenario_from_name(const std::string& name);  // throws on unknown
std::string scenario_name(ScenarioKind kind);

struct ScenarioOutcome {
  // "success" | "sig-failure" | "decryption-abort" | "replay-abort" |
  // "authenc-failure"
  std::string label;
  std::vector<std::int64_t> result;
  Transcript transcript;
  // SubstituteCtOut only: whether the forged ciphertext ever decrypted
  // successfully under the session key (must stay false for a real AE).
  bool forged_ct_accepted = false;
};

ScenarioOutcome run_scenario(ScenarioKind kind, SessionKind session,
                             const std::string& f, const std::vector<std::int64_t>& x,
                             const CryptoSuite& suite, std::uint64_t seed);

// Transcript-indistinguishability harness: compares honest transcripts on
// the true inputs against simulated ones in which the compute round carries
// the canonical inputs under a freshly drawn key. The statistic is the
// total-variation distance between the empirical distributions of the
// record-length tuples over `trials` paired sessions.
struct HybridOptions {
  std::string canonical_f = "sum";
  std::vector<std::int64_t> canonical_x = {0, 0, 0};
  int trials = 1000;
  bool replace_key_with_random = true;
};

struct HybridReport {
  double statistic = 0.0;
  int trials = 0;
};

HybridReport simulated_vs_real_transcript(const std::string& f,
                                          const std::vector<std::int64_t>& x,
                                          const CryptoSuite& suite,
                                          const HybridOptions& options,
                                          std::uint64_t seed);

}  // namespace qesim::enclave
