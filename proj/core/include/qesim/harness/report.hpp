#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qesim/transcript.hpp"

namespace qesim::harness {

struct Quantity {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;  // the tolerance this quantity was checked against
  bool pass = false;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Quantity> quantities;
  // Deterministic work counter (branches, trials); wall-clock time is
  // reported on the console only so report files stay byte-reproducible.
  std::uint64_t logical_cost = 0;
  bool pass = true;
  std::string failure_name;  // first failing invariant, empty when passing

  void add_parameter(std::string name, std::string value);
  // Registers the quantity and folds its pass bit into the report.
  void add_quantity(const std::string& name, double value, double tolerance,
                    bool quantity_pass);
  void fail(const std::string& name);

  std::string to_json() const;  // deterministic, sorted keys
};

// Line-delimited records: {"index":..,"t":..,"party":..,"kind":..,
// "payload_hex":.., ...attrs}.
std::string transcript_to_jsonl(const Transcript& transcript);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qesim::harness
