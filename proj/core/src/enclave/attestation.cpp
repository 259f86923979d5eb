#include "qesim/enclave/attestation.hpp"

namespace qesim::enclave {

AttestationRegistry::AttestationRegistry(const CryptoSuite& suite, Bytes session_id,
                                         std::set<std::string> registered_parties,
                                         std::set<std::string> honest_parties, Prng rng)
    : suite_(suite),
      sid_(std::move(session_id)),
      registered_(std::move(registered_parties)),
      honest_(std::move(honest_parties)),
      keys_(suite.signature->keygen(rng)),
      rng_(rng.fork(0x617474)) {}

Bytes AttestationRegistry::install(const std::string& party, const Bytes& idx,
                                   std::shared_ptr<EnclaveProgram> prog) {
  if (!registered_.contains(party))
    throw std::invalid_argument("party is not registered with the attestation registry");
  if (honest_.contains(party) && idx != sid_)
    throw std::invalid_argument("honest party must install under the session id");

  Bytes eid(suite_.eid_bytes);
  for (auto& b : eid) b = static_cast<std::uint8_t>(rng_.next_u64() & 0xff);
  table_[{eid, party}] = Entry{idx, std::move(prog), Bytes{}};
  return eid;
}

AttestationRegistry::ResumeOutput AttestationRegistry::resume(const std::string& party,
                                                              const Bytes& eid,
                                                              const Bytes& input) {
  const auto it = table_.find({eid, party});
  if (it == table_.end())
    throw EnclaveAbort("not-found-abort", "no enclave installed under this eid");
  Entry& entry = it->second;
  const Bytes output = entry.prog->resume(input, entry.mem);
  const Bytes message =
      attestation_message(entry.idx, eid, entry.prog->id(), output);
  return {output, suite_.signature->sign(keys_.secret_key, message)};
}

Bytes AttestationRegistry::attestation_message(const Bytes& idx, const Bytes& eid,
                                               const std::string& prog_id,
                                               const Bytes& output) {
  Bytes m;
  append_u32(m, static_cast<std::uint32_t>(idx.size()));
  m.insert(m.end(), idx.begin(), idx.end());
  append_u32(m, static_cast<std::uint32_t>(eid.size()));
  m.insert(m.end(), eid.begin(), eid.end());
  append_u32(m, static_cast<std::uint32_t>(prog_id.size()));
  m.insert(m.end(), prog_id.begin(), prog_id.end());
  append_u32(m, static_cast<std::uint32_t>(output.size()));
  m.insert(m.end(), output.begin(), output.end());
  return m;
}

}  // namespace qesim::enclave
