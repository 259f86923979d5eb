#include "qesim/enclave/scenarios.hpp"

#include <map>
#include <stdexcept>

namespace qesim::enclave {

ScenarioKind scenario_from_name(const std::string& name) {
  if (name == "honest") return ScenarioKind::Honest;
  if (name == "forge-attestation") return ScenarioKind::ForgeAttestation;
  if (name == "tamper-ct") return ScenarioKind::TamperCt;
  if (name == "replay-ct") return ScenarioKind::ReplayCt;
  if (name == "substitute-ctout") return ScenarioKind::SubstituteCtOut;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::string scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Honest: return "honest";
    case ScenarioKind::ForgeAttestation: return "forge-attestation";
    case ScenarioKind::TamperCt: return "tamper-ct";
    case ScenarioKind::ReplayCt: return "replay-ct";
    case ScenarioKind::SubstituteCtOut: return "substitute-ctout";
  }
  throw std::invalid_argument("unknown scenario");
}

ScenarioOutcome run_scenario(ScenarioKind kind, SessionKind session,
                             const std::string& f, const std::vector<std::int64_t>& x,
                             const CryptoSuite& suite, std::uint64_t seed) {
  ScenarioOutcome outcome;
  Prng master(seed);

  Bytes sid{'s', 'i', 'd', '-'};
  append_u64(sid, seed);

  AttestationRegistry registry(suite, sid, {"client", "server"}, {"client", "server"},
                               master.fork(1));
  std::shared_ptr<EnclaveProgram> prog;
  if (session == SessionKind::Rsr)
    prog = std::make_shared<ProgRsr>(suite, QuantumSourcePort{}, master.fork(2));
  else
    prog = std::make_shared<ProgOutsrc>(suite, master.fork(2));

  ProtocolServer server(registry, prog);
  DuplexChannel channel(outcome.transcript);
  Prng tamper_rng = master.fork(4);

  switch (kind) {
    case ScenarioKind::Honest:
      break;
    case ScenarioKind::ForgeAttestation:
      channel.set_tamper([](Bytes wire, const std::string&) {
        if (!wire.empty() && wire[0] == 0x02) wire.back() ^= 0x01;
        return wire;
      });
      break;
    case ScenarioKind::TamperCt:
      channel.set_tamper([](Bytes wire, const std::string&) {
        if (!wire.empty() && wire[0] == 0x03) wire.back() ^= 0x01;
        return wire;
      });
      break;
    case ScenarioKind::ReplayCt:
      break;  // handled in the responder below
    case ScenarioKind::SubstituteCtOut:
      channel.set_tamper([&tamper_rng](Bytes wire, const std::string&) {
        if (!wire.empty() && wire[0] == 0x04) {
          // Replace the ciphertext body with adversarial bytes of the same
          // length; the adversary has no key material.
          for (std::size_t i = 9; i < wire.size(); ++i)
            wire[i] = static_cast<std::uint8_t>(tamper_rng.next_u64() & 0xff);
        }
        return wire;
      });
      break;
  }

  channel.set_responder("server", [&](const Bytes& wire) {
    const WireRecord request = decode_record(wire);
    const WireRecord response = server.handle(request);
    channel.send("server", "client", encode_record(response));
    if (kind == ScenarioKind::ReplayCt && request.kind == RecordKind::ComputeRequest) {
      // The dishonest server feeds the same ciphertext to the enclave again.
      server.handle(request);
    }
  });

  Prng client_rng = master.fork(3);
  ProtocolClient client(suite, registry.getpk(), sid, channel, client_rng);
  const std::string prog_id = (session == SessionKind::Rsr) ? "prog-rsr" : "prog-outsrc";

  try {
    if (!client.keyex(prog_id)) {
      outcome.label = "sig-failure";
      return outcome;
    }
    const ClientOutcome co = client.compute(f, x);
    outcome.label = co.status;
    outcome.result = co.result;
  } catch (const EnclaveAbort& abort) {
    outcome.label = abort.label;
  }
  if (kind == ScenarioKind::SubstituteCtOut)
    outcome.forged_ct_accepted = (outcome.label == "success");
  return outcome;
}

namespace {

std::vector<std::size_t> record_lengths(const Transcript& transcript) {
  std::vector<std::size_t> out;
  out.reserve(transcript.size());
  for (const auto& r : transcript.records()) out.push_back(r.payload.size());
  return out;
}

// One simulated session: genuine key exchange, but the compute round carries
// the canonical inputs under a (possibly fresh random) key.
Transcript simulated_session(const CryptoSuite& suite, const HybridOptions& options,
                             std::uint64_t seed) {
  Transcript transcript;
  Prng master(seed);

  Bytes sid{'s', 'i', 'd', '-'};
  append_u64(sid, seed);
  AttestationRegistry registry(suite, sid, {"client", "server"}, {"client", "server"},
                               master.fork(1));
  auto prog = std::make_shared<ProgOutsrc>(suite, master.fork(2));
  ProtocolServer server(registry, prog);
  DuplexChannel channel(transcript);

  Prng client_rng = master.fork(3);
  Prng key_rng = master.fork(5);

  Bytes sim_key;
  channel.set_responder("server", [&](const Bytes& wire) {
    const WireRecord request = decode_record(wire);
    if (request.kind == RecordKind::KeyexRequest) {
      const WireRecord response = server.handle(request);
      channel.send("server", "client", encode_record(response));
      return;
    }
    // Synthesized compute response: canonical output under the sim key.
    const std::vector<std::int64_t> y0 =
        apply_outsrc_function(options.canonical_f, options.canonical_x);
    const Bytes ct_out = suite.ae->encrypt(sim_key, 1, encode_i64_list(y0));
    Bytes payload;
    append_u32(payload, static_cast<std::uint32_t>(ct_out.size()));
    payload.insert(payload.end(), ct_out.begin(), ct_out.end());
    channel.send("server", "client", encode_record({RecordKind::ComputeResponse, payload}));
  });

  ProtocolClient client(suite, registry.getpk(), sid, channel, client_rng);
  if (!client.keyex("prog-outsrc"))
    throw std::runtime_error("simulated key exchange failed");

  sim_key = client.session_key();
  if (options.replace_key_with_random) {
    sim_key.resize(suite.ae->key_size());
    for (auto& b : sim_key) b = static_cast<std::uint8_t>(key_rng.next_u64() & 0xff);
  }

  // The simulator encrypts the canonical inputs instead of the real ones.
  const Bytes ct = suite.ae->encrypt(
      sim_key, 0, encode_function_call(options.canonical_f, options.canonical_x));
  Bytes payload;
  append_u32(payload, static_cast<std::uint32_t>(ct.size()));
  payload.insert(payload.end(), ct.begin(), ct.end());
  channel.send("client", "server", encode_record({RecordKind::ComputeRequest, payload}));
  channel.receive("client");
  return transcript;
}

}  // namespace

HybridReport simulated_vs_real_transcript(const std::string& f,
                                          const std::vector<std::int64_t>& x,
                                          const CryptoSuite& suite,
                                          const HybridOptions& options,
                                          std::uint64_t seed) {
  std::map<std::vector<std::size_t>, double> real_counts, sim_counts;
  for (int t = 0; t < options.trials; ++t) {
    const SessionResult real = run_session(SessionKind::Outsrc, f, x, suite,
                                           seed + 2 * static_cast<std::uint64_t>(t));
    real_counts[record_lengths(real.transcript)] += 1.0;
    const Transcript sim = simulated_session(
        suite, options, seed + 2 * static_cast<std::uint64_t>(t) + 1);
    sim_counts[record_lengths(sim)] += 1.0;
  }

  double tv = 0.0;
  const double n = static_cast<double>(options.trials);
  for (const auto& [key, count] : real_counts) {
    const auto it = sim_counts.find(key);
    const double other = (it == sim_counts.end()) ? 0.0 : it->second;
    tv += std::abs(count - other) / n;
  }
  for (const auto& [key, count] : sim_counts) {
    if (!real_counts.contains(key)) tv += count / n;
  }
  return {tv / 2.0, options.trials};
}

}  // namespace qesim::enclave
