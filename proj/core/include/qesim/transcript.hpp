#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qesim {

struct TranscriptRecord {
  std::uint64_t index = 0;
  std::uint64_t logical_time = 0;  // message counter, never wall clock
  std::string party;
  std::string kind;
  std::vector<std::uint8_t> payload;
  // Small self-describing extras (angles, signals, labels), kept ordered.
  std::vector<std::pair<std::string, std::string>> attrs;
};

// Append-only message log shared by the protocol runners.
class Transcript {
 public:
  TranscriptRecord& append(std::string party, std::string kind,
                           std::vector<std::uint8_t> payload = {});

  const std::vector<TranscriptRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<TranscriptRecord> records_;
};

std::string to_hex(const std::vector<std::uint8_t>& bytes);

}  // namespace qesim
