#pragma once

#include <optional>

#include "qesim/harness/config.hpp"
#include "qesim/harness/report.hpp"
#include "qesim/ubqc/pattern.hpp"
#include "qesim/ubqc/session.hpp"

namespace qesim::harness {

// Exit codes: 0 success, 2 invariant failure, 3 config error,
// 4 enumeration bound exceeded.
struct ExperimentOutput {
  ExperimentReport report;
  std::string transcript_text;  // empty when the experiment emits none
  int exit_code = 0;
};

ExperimentOutput cmd_equivalence(const Config& config, int trials);

ExperimentOutput cmd_ubqc(const Config& config, const std::string& pattern_path,
                          const std::string& phi_path, const std::string& phi2_path,
                          const std::string& backend);

ExperimentOutput cmd_enclave(const Config& config, const std::string& scenario,
                             const std::string& f, const std::vector<std::int64_t>& x);

struct SelftestOptions {
  // Test hook: corrupts the weak-correlation fixture so the named failure
  // path can be exercised.
  bool corrupt_weak_correlation_fixture = false;
};

ExperimentOutput cmd_selftest(const Config& config, const SelftestOptions& options = {});

// Pattern file: "n <rows>", "m <measured columns>",
// "kind <linear-cluster|brickwork>", one per line, # comments allowed.
ubqc::PatternGraph load_pattern_graph(const std::string& path);
// Whitespace-separated integers mod 8, column-major, one per measured vertex.
std::vector<Angle> load_phi_file(const std::string& path, std::size_t expected_count);
ubqc::Pattern load_pattern(const std::string& pattern_path, const std::string& phi_path);

ubqc::Preparation backend_from_name(const std::string& name);  // throws ConfigError

}  // namespace qesim::harness
