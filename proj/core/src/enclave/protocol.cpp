#include "qesim/enclave/protocol.hpp"

#include <stdexcept>

namespace qesim::enclave {

Bytes encode_record(const WireRecord& record) {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(record.kind));
  append_u32(out, static_cast<std::uint32_t>(record.payload.size()));
  out.insert(out.end(), record.payload.begin(), record.payload.end());
  return out;
}

WireRecord decode_record(const Bytes& wire) {
  if (wire.empty()) throw std::runtime_error("empty wire record");
  std::size_t off = 0;
  const std::uint8_t kind = wire[off++];
  if (kind < 0x01 || kind > 0x04) throw std::runtime_error("unknown record kind");
  const std::uint32_t len = read_u32(wire, off);
  if (off + len != wire.size()) throw std::runtime_error("record length mismatch");
  return {static_cast<RecordKind>(kind),
          Bytes(wire.begin() + static_cast<std::ptrdiff_t>(off), wire.end())};
}

Bytes keyex_request_payload(std::uint64_t g_a) {
  Bytes out;
  append_u64(out, g_a);
  return out;
}

Bytes keyex_response_payload(const Bytes& eid, std::uint64_t g_b, const Bytes& sig) {
  Bytes out;
  append_u32(out, static_cast<std::uint32_t>(eid.size()));
  out.insert(out.end(), eid.begin(), eid.end());
  append_u64(out, g_b);
  append_u32(out, static_cast<std::uint32_t>(sig.size()));
  out.insert(out.end(), sig.begin(), sig.end());
  return out;
}

KeyexResponse parse_keyex_response(const Bytes& payload) {
  KeyexResponse r;
  std::size_t off = 0;
  const std::uint32_t eid_len = read_u32(payload, off);
  if (off + eid_len > payload.size()) throw std::runtime_error("truncated response");
  r.eid.assign(payload.begin() + static_cast<std::ptrdiff_t>(off),
               payload.begin() + static_cast<std::ptrdiff_t>(off + eid_len));
  off += eid_len;
  r.g_b = read_u64(payload, off);
  const std::uint32_t sig_len = read_u32(payload, off);
  if (off + sig_len > payload.size()) throw std::runtime_error("truncated response");
  r.signature.assign(payload.begin() + static_cast<std::ptrdiff_t>(off),
                     payload.begin() + static_cast<std::ptrdiff_t>(off + sig_len));
  return r;
}

void DuplexChannel::set_responder(const std::string& party, Responder responder) {
  responder_party_ = party;
  responder_ = std::move(responder);
}

void DuplexChannel::send(const std::string& from, const std::string& to,
                         const Bytes& wire) {
  Bytes delivered = wire;
  if (tamper_) delivered = tamper_(delivered, from + "->" + to);
  std::string kind = "wire";
  if (!delivered.empty()) {
    switch (delivered[0]) {
      case 0x01: kind = "keyex-request"; break;
      case 0x02: kind = "keyex-response"; break;
      case 0x03: kind = "compute-request"; break;
      case 0x04: kind = "compute-response"; break;
      default: break;
    }
  }
  transcript_->append(from, kind, delivered);
  if (to == responder_party_ && responder_) {
    responder_(delivered);
    return;
  }
  queue_.emplace_back(to, std::move(delivered));
}

Bytes DuplexChannel::receive(const std::string& to) {
  for (auto it = queue_.begin(); it != queue_.end(); ++it) {
    if (it->first == to) {
      Bytes wire = std::move(it->second);
      queue_.erase(it);
      return wire;
    }
  }
  throw std::runtime_error("no pending message for " + to);
}

WireRecord ProtocolServer::handle(const WireRecord& request) {
  switch (request.kind) {
    case RecordKind::KeyexRequest: {
      std::size_t off = 0;
      const std::uint64_t g_a = read_u64(request.payload, off);
      eid_ = registry_->install("server", registry_->session_id(), prog_);
      const auto out = registry_->resume("server", eid_, encode_keyex_input(g_a));
      std::size_t ooff = 0;
      (void)read_u64(out.output, ooff);  // echoed g_a
      const std::uint64_t g_b = read_u64(out.output, ooff);
      return {RecordKind::KeyexResponse,
              keyex_response_payload(eid_, g_b, out.signature)};
    }
    case RecordKind::ComputeRequest: {
      std::size_t off = 0;
      const std::uint32_t len = read_u32(request.payload, off);
      if (off + len > request.payload.size())
        throw std::runtime_error("truncated compute request");
      const Bytes ct(request.payload.begin() + static_cast<std::ptrdiff_t>(off),
                     request.payload.begin() + static_cast<std::ptrdiff_t>(off + len));
      const auto out = registry_->resume("server", eid_, encode_compute_input(ct));
      Bytes payload;
      append_u32(payload, static_cast<std::uint32_t>(out.output.size()));
      payload.insert(payload.end(), out.output.begin(), out.output.end());
      return {RecordKind::ComputeResponse, payload};
    }
    default:
      throw std::runtime_error("server received a response record");
  }
}

bool ProtocolClient::keyex(const std::string& expected_prog_id) {
  const std::uint64_t a = suite_->group.random_exponent(*rng_);
  const std::uint64_t g_a = suite_->group.power(suite_->group.generator, a);
  channel_->send("client", "server",
                 encode_record({RecordKind::KeyexRequest, keyex_request_payload(g_a)}));
  const WireRecord response = decode_record(channel_->receive("client"));
  if (response.kind != RecordKind::KeyexResponse)
    throw std::runtime_error("unexpected record during key exchange");
  const KeyexResponse r = parse_keyex_response(response.payload);

  Bytes expected_output;
  append_u64(expected_output, g_a);
  append_u64(expected_output, r.g_b);
  const Bytes message = AttestationRegistry::attestation_message(
      sid_, r.eid, expected_prog_id, expected_output);
  if (!suite_->signature->verify(mpk_, message, r.signature)) return false;

  sk_ = derive_key(suite_->group, suite_->group.power(r.g_b, a),
                   suite_->ae->key_size());
  return true;
}

ClientOutcome ProtocolClient::compute(const std::string& f,
                                      const std::vector<std::int64_t>& x) {
  ClientOutcome outcome;
  const Bytes ct =
      suite_->ae->encrypt(sk_, next_nonce_, encode_function_call(f, x));
  next_nonce_ += 2;
  Bytes payload;
  append_u32(payload, static_cast<std::uint32_t>(ct.size()));
  payload.insert(payload.end(), ct.begin(), ct.end());
  channel_->send("client", "server", encode_record({RecordKind::ComputeRequest, payload}));

  const WireRecord response = decode_record(channel_->receive("client"));
  if (response.kind != RecordKind::ComputeResponse)
    throw std::runtime_error("unexpected record during compute");
  std::size_t off = 0;
  const std::uint32_t len = read_u32(response.payload, off);
  if (off + len > response.payload.size())
    throw std::runtime_error("truncated compute response");
  const Bytes ct_out(response.payload.begin() + static_cast<std::ptrdiff_t>(off),
                     response.payload.begin() + static_cast<std::ptrdiff_t>(off + len));

  // Freshness across the session, then authenticated decryption.
  for (const auto& seen : seen_ct_out_) {
    if (seen == ct_out) {
      outcome.status = "authenc-failure";
      return outcome;
    }
  }
  seen_ct_out_.push_back(ct_out);
  const auto plaintext = suite_->ae->decrypt(sk_, ct_out);
  if (!plaintext) {
    outcome.status = "authenc-failure";
    return outcome;
  }
  outcome.result = decode_i64_list(*plaintext);
  return outcome;
}

SessionResult run_session(SessionKind kind, const std::string& f,
                          const std::vector<std::int64_t>& x, const CryptoSuite& suite,
                          std::uint64_t seed, QuantumSourcePort source,
                          DuplexChannel::Tamper tamper) {
  SessionResult result;
  Prng master(seed);

  Bytes sid{'s', 'i', 'd', '-'};
  append_u64(sid, seed);

  AttestationRegistry registry(suite, sid, {"client", "server"}, {"client", "server"},
                               master.fork(1));
  std::shared_ptr<EnclaveProgram> prog;
  if (kind == SessionKind::Rsr)
    prog = std::make_shared<ProgRsr>(suite, std::move(source), master.fork(2));
  else
    prog = std::make_shared<ProgOutsrc>(suite, master.fork(2));

  ProtocolServer server(registry, prog);
  DuplexChannel channel(result.transcript);
  channel.set_tamper(std::move(tamper));
  channel.set_responder("server", [&](const Bytes& wire) {
    const WireRecord response = server.handle(decode_record(wire));
    channel.send("server", "client", encode_record(response));
  });

  Prng client_rng = master.fork(3);
  ProtocolClient client(suite, registry.getpk(), sid, channel, client_rng);

  try {
    const std::string prog_id = (kind == SessionKind::Rsr) ? "prog-rsr" : "prog-outsrc";
    if (!client.keyex(prog_id)) {
      result.outcome.status = "sig-failure";
      return result;
    }
    result.client_session_key = client.session_key();
    result.outcome = client.compute(f, x);
  } catch (const EnclaveAbort& abort) {
    result.outcome.status = abort.label;
    return result;
  }

  if (kind == SessionKind::Rsr && result.outcome.status == "success") {
    for (auto v : result.outcome.result)
      result.client_angles.push_back(Angle::from_index(static_cast<int>(v & 7)));
  }
  return result;
}

}  // namespace qesim::enclave
