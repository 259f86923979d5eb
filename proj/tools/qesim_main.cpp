// qesim: reproduce the remote-state-rotation construction checks, run blind
// delegated computation sessions, and exercise the attested-execution layer
// from the command line. Every run is deterministic in (command, config,
// seed) and writes a report (and, where applicable, a transcript) that is
// byte-identical across repeats.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "qesim/harness/experiments.hpp"

namespace {

using qesim::harness::Config;
using qesim::harness::ConfigError;
using qesim::harness::ExperimentOutput;

struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file path");
  cmd->add_option("--seed", flags.seed, "Master seed (overrides config)")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--out", flags.out_path,
                  "Output prefix; writes <out>.report.json and, when the "
                  "experiment emits one, <out>.transcript.jsonl");
}

Config resolve_config(const CommonFlags& flags) {
  Config config = Config::resolve(flags.config_path);
  if (flags.seed_set) config.seed = flags.seed;
  return config;
}

int emit(const ExperimentOutput& out, const CommonFlags& flags, double seconds) {
  const std::string report = out.report.to_json();
  if (flags.out_path.empty()) {
    std::cout << report;
  } else {
    qesim::harness::write_text_file(flags.out_path + ".report.json", report);
    if (!out.transcript_text.empty())
      qesim::harness::write_text_file(flags.out_path + ".transcript.jsonl",
                                      out.transcript_text);
  }
  std::cerr << out.report.experiment << ": " << (out.report.pass ? "pass" : "FAIL")
            << " (" << seconds << " s, logical cost " << out.report.logical_cost
            << ")\n";
  if (!out.report.pass) std::cerr << "failing check: " << out.report.failure_name << "\n";
  return out.exit_code;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::string token;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!token.empty()) out.push_back(std::stoll(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Remote-state-rotation / blind delegated computation simulator"};
  app.require_subcommand(1);

  CommonFlags eq_flags, ubqc_flags, enclave_flags, selftest_flags;

  auto* eq = app.add_subcommand(
      "equivalence", "Construction checks: honest-case and simulator-case output "
                     "distances over adversarial input suites");
  int trials = 100;
  eq->add_option("--trials", trials, "Number of adversarial inputs");
  add_common(eq, eq_flags);

  auto* ub = app.add_subcommand(
      "ubqc", "Run a blind delegated computation and compare it against direct "
              "pattern simulation; optional two-angle-file blindness check");
  std::string pattern_path, phi_path, phi2_path, backend = "direct";
  ub->add_option("--pattern", pattern_path, "Pattern file (n, m, kind)")->required();
  ub->add_option("--phi", phi_path, "Angle file (integers mod 8)")->required();
  ub->add_option("--phi2", phi2_path, "Second angle file: server-view comparison mode");
  ub->add_option("--backend", backend, "Preparation backend: direct | rsp | rsr");
  add_common(ub, ubqc_flags);

  auto* en = app.add_subcommand(
      "enclave", "Attested-execution sessions: honest runs and adversarial "
                 "channel scenarios");
  std::string scenario = "honest", f = "sum", x_text = "1,2,3";
  en->add_option("--scenario", scenario,
                 "honest | forge-attestation | tamper-ct | replay-ct | "
                 "substitute-ctout");
  en->add_option("--f", f, "Registered function name");
  en->add_option("--x", x_text, "Comma-separated integer argument list");
  add_common(en, enclave_flags);

  auto* st = app.add_subcommand("selftest", "Full invariant suite at the configured "
                                            "tolerances");
  add_common(st, selftest_flags);

  CLI11_PARSE(app, argc, argv);

  std::string experiment = "selftest";
  const CommonFlags* flags = &selftest_flags;
  if (eq->parsed()) {
    experiment = "equivalence";
    flags = &eq_flags;
  } else if (ub->parsed()) {
    experiment = "ubqc";
    flags = &ubqc_flags;
  } else if (en->parsed()) {
    experiment = "enclave";
    flags = &enclave_flags;
  }

  // A report is written even when the run fails before its experiment can
  // start, with the failing condition named.
  auto emit_failure = [&](const std::string& name, const std::string& what, int code) {
    ExperimentOutput out;
    out.report.experiment = experiment;
    out.report.add_parameter("error", what);
    out.report.fail(name);
    out.exit_code = code;
    std::cerr << name << ": " << what << "\n";
    emit(out, *flags, 0.0);
    return code;
  };

  try {
    const auto started = std::chrono::steady_clock::now();
    ExperimentOutput out;
    if (eq->parsed()) {
      out = qesim::harness::cmd_equivalence(resolve_config(eq_flags), trials);
    } else if (ub->parsed()) {
      out = qesim::harness::cmd_ubqc(resolve_config(ubqc_flags), pattern_path, phi_path,
                                     phi2_path, backend);
    } else if (en->parsed()) {
      out = qesim::harness::cmd_enclave(resolve_config(enclave_flags), scenario, f,
                                        parse_int_list(x_text));
    } else {
      out = qesim::harness::cmd_selftest(resolve_config(selftest_flags));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return emit(out, *flags, seconds);
  } catch (const ConfigError& e) {
    return emit_failure("config-error", e.what(), 3);
  } catch (const std::exception& e) {
    return emit_failure("runtime-error", e.what(), 2);
  }
}
