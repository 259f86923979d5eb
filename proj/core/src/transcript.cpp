#include "qesim/transcript.hpp"

namespace qesim {

TranscriptRecord& Transcript::append(std::string party, std::string kind,
                                     std::vector<std::uint8_t> payload) {
  TranscriptRecord r;
  r.index = records_.size();
  r.logical_time = records_.size();
  r.party = std::move(party);
  r.kind = std::move(kind);
  r.payload = std::move(payload);
  records_.push_back(std::move(r));
  return records_.back();
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

}  // namespace qesim
