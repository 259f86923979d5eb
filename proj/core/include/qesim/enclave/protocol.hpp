#pragma once

#include <deque>
#include <functional>
#include <optional>

#include "qesim/enclave/programs.hpp"
#include "qesim/transcript.hpp"

namespace qesim::enclave {

// Classical channel records: one-byte kind tag, little-endian u32 length,
// payload bytes.
enum class RecordKind : std::uint8_t {
  KeyexRequest = 0x01,
  KeyexResponse = 0x02,
  ComputeRequest = 0x03,
  ComputeResponse = 0x04,
};

struct WireRecord {
  RecordKind kind;
  Bytes payload;
};

Bytes encode_record(const WireRecord& record);
WireRecord decode_record(const Bytes& wire);  // throws on malformed input

// Payload layouts.
Bytes keyex_request_payload(std::uint64_t g_a);
Bytes keyex_response_payload(const Bytes& eid, std::uint64_t g_b, const Bytes& sig);
struct KeyexResponse {
  Bytes eid;
  std::uint64_t g_b = 0;
  Bytes signature;
};
KeyexResponse parse_keyex_response(const Bytes& payload);

// Ordered reliable duplex channel with an optional on-wire tamper hook.
// A party may register a responder that is invoked on delivery, which gives
// the alternating client/server state-machine flow in process. Every
// delivered record is logged exactly once, in causal order.
class DuplexChannel {
 public:
  using Tamper = std::function<Bytes(const Bytes& wire, const std::string& direction)>;
  using Responder = std::function<void(const Bytes& wire)>;

  explicit DuplexChannel(Transcript& transcript) : transcript_(&transcript) {}

  void set_tamper(Tamper tamper) { tamper_ = std::move(tamper); }
  void set_responder(const std::string& party, Responder responder);

  void send(const std::string& from, const std::string& to, const Bytes& wire);
  Bytes receive(const std::string& to);

 private:
  Transcript* transcript_;
  Tamper tamper_;
  std::deque<std::pair<std::string, Bytes>> queue_;  // (recipient, wire)
  std::string responder_party_;
  Responder responder_;
};

// The server's protocol role: installs the program on first keyex, forwards
// compute calls to the registry, relays attested outputs.
class ProtocolServer {
 public:
  ProtocolServer(AttestationRegistry& registry, std::shared_ptr<EnclaveProgram> prog)
      : registry_(&registry), prog_(std::move(prog)) {}

  // Handles one request record; may throw EnclaveAbort from the enclave.
  WireRecord handle(const WireRecord& request);

  const Bytes& eid() const { return eid_; }

 private:
  AttestationRegistry* registry_;
  std::shared_ptr<EnclaveProgram> prog_;
  Bytes eid_;
};

enum class SessionKind { Rsr, Outsrc };

struct ClientOutcome {
  // "success" | "sig-failure" | "authenc-failure" | an enclave abort label
  std::string status = "success";
  std::vector<std::int64_t> result;  // y; angle indices for rsr sessions
};

// Client role: key exchange with attestation verification, then compute
// rounds over the channel. Requires a responder-driven channel.
class ProtocolClient {
 public:
  ProtocolClient(const CryptoSuite& suite, const Bytes& mpk, const Bytes& sid,
                 DuplexChannel& channel, Prng& rng)
      : suite_(&suite), mpk_(mpk), sid_(sid), channel_(&channel), rng_(&rng) {}

  // Returns false on a bad attestation (status sig-failure).
  bool keyex(const std::string& expected_prog_id);

  ClientOutcome compute(const std::string& f, const std::vector<std::int64_t>& x);

  const Bytes& session_key() const { return sk_; }

 private:
  const CryptoSuite* suite_;
  Bytes mpk_;
  Bytes sid_;
  DuplexChannel* channel_;
  Prng* rng_;
  Bytes sk_;
  std::uint64_t next_nonce_ = 0;  // client nonces are even, enclave's odd
  std::vector<Bytes> seen_ct_out_;
};

// Full session: builds registry, server, channel, client, runs keyex plus
// one compute round. For rsr sessions the source port supplies the qubits
// (register owned by the caller, handles held by "enclave").
struct SessionResult {
  ClientOutcome outcome;
  Transcript transcript;
  std::vector<Angle> client_angles;  // rsr: the angle vector the client got
  Bytes client_session_key;
};

SessionResult run_session(SessionKind kind, const std::string& f,
                          const std::vector<std::int64_t>& x, const CryptoSuite& suite,
                          std::uint64_t seed, QuantumSourcePort source = {},
                          DuplexChannel::Tamper tamper = {});

}  // namespace qesim::enclave
