#include "qesim/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qesim/ac/equivalence.hpp"
#include "qesim/enclave/scenarios.hpp"
#include "qesim/gates.hpp"
#include "qesim/random_states.hpp"
#include "qesim/ubqc/blindness.hpp"
#include "qesim/ubqc/reference.hpp"

namespace qesim::harness {

namespace {

constexpr double kReferenceTolerance = 1e-12;

// Registers the check; a failure that would pass at the reference tolerance
// is flagged as tolerance-induced.
void add_check(ExperimentReport& report, const std::string& name,
               const std::string& failure_label, double value, double tolerance) {
  const bool pass = value <= tolerance;
  report.quantities.push_back({name, value, tolerance, pass});
  if (!pass) {
    report.pass = false;
    if (report.failure_name.empty())
      report.failure_name = (value <= kReferenceTolerance)
                                ? "tolerance-induced:" + failure_label
                                : failure_label;
  }
}

void add_check(ExperimentReport& report, const std::string& name, double value,
               double tolerance) {
  add_check(report, name, name, value, tolerance);
}

}  // namespace

ExperimentOutput cmd_equivalence(const Config& config, int trials) {
  ExperimentOutput out;
  out.report.experiment = "equivalence";
  out.report.add_parameter("seed", std::to_string(config.seed));
  out.report.add_parameter("trials", std::to_string(trials));
  if (trials == 0) return out;

  Prng rng(config.seed);
  const auto result = ac::run_equivalence_suite(trials, rng, config.max_qubits,
                                                config.tolerance_validity);
  out.report.logical_cost = static_cast<std::uint64_t>(trials);
  add_check(out.report, "construction-correctness-distance", result.correctness,
            config.tolerance_equality);
  add_check(out.report, "construction-security-distance-max", result.max_security,
            config.tolerance_equality);
  add_check(out.report, "weak-correlation-violations", "weak-correlation-violation",
            result.weak_correlation_all_passed ? 0.0 : 1.0, 0.0);
  out.exit_code = out.report.pass ? 0 : 2;
  return out;
}

ExperimentOutput cmd_ubqc(const Config& config, const std::string& pattern_path,
                          const std::string& phi_path, const std::string& phi2_path,
                          const std::string& backend) {
  ExperimentOutput out;
  out.report.experiment = "ubqc";
  out.report.add_parameter("seed", std::to_string(config.seed));
  out.report.add_parameter("backend", backend);

  try {
    const ubqc::Pattern pattern = load_pattern(pattern_path, phi_path);
    const ubqc::Preparation prep = backend_from_name(backend);
    const std::size_t measured = pattern.graph().measured_count();
    out.report.add_parameter("rows", std::to_string(pattern.graph().rows()));
    out.report.add_parameter("columns", std::to_string(pattern.graph().measured_columns()));

    if ((std::uint64_t{1} << measured) > config.enumeration_bound)
      throw ubqc::EnumerationBoundExceeded("signal enumeration exceeds the bound");

    const auto branches =
        ubqc::enumerate_signal_branches(pattern, prep, config.seed, config.max_qubits);
    out.report.logical_cost = branches.size();

    double min_fidelity = 1.0;
    double max_prob_diff = 0.0;
    double prob_sum = 0.0;
    for (const auto& branch : branches) {
      const auto oracle =
          ubqc::reference_branch(pattern, branch.recorded_signals);
      min_fidelity = std::min(min_fidelity,
                              fidelity_with_pure(branch.client_output, oracle.output));
      max_prob_diff = std::max(
          max_prob_diff, std::abs(branch.branch_probability - oracle.probability));
      prob_sum += branch.branch_probability;
    }
    add_check(out.report, "fidelity-to-oracle-min-deficit", 1.0 - min_fidelity,
              config.tolerance_equality);
    add_check(out.report, "branch-probability-max-diff", max_prob_diff,
              config.tolerance_equality);
    add_check(out.report, "branch-probability-sum-deficit", std::abs(prob_sum - 1.0),
              config.tolerance_equality);

    if (!phi2_path.empty()) {
      const ubqc::Pattern pattern2 = load_pattern(pattern_path, phi2_path);
      const auto view1 = ubqc::server_view_distribution(pattern, config.enumeration_bound);
      const auto view2 = ubqc::server_view_distribution(pattern2, config.enumeration_bound);
      const auto tv = ubqc::total_variation(view1, view2);
      add_check(out.report, "server-view-tv-distance", "blindness-violation", tv.value(),
                0.0);
      out.report.logical_cost += view1.total + view2.total;
    }

    // One sampled run provides the emitted transcript.
    ubqc::RunOptions opt;
    opt.preparation = prep;
    opt.max_qubits = config.max_qubits;
    Prng rng(config.seed);
    const auto run = ubqc::run_ubqc(pattern, opt, rng);
    out.transcript_text = transcript_to_jsonl(run.transcript);
  } catch (const ubqc::EnumerationBoundExceeded& e) {
    out.report.fail("enumeration-bound-exceeded");
    out.report.add_parameter("error", e.what());
    out.exit_code = 4;
    return out;
  }

  out.exit_code = out.report.pass ? 0 : 2;
  return out;
}

ExperimentOutput cmd_enclave(const Config& config, const std::string& scenario,
                             const std::string& f, const std::vector<std::int64_t>& x) {
  ExperimentOutput out;
  out.report.experiment = "enclave";
  out.report.add_parameter("seed", std::to_string(config.seed));
  out.report.add_parameter("scenario", scenario);
  out.report.add_parameter("f", f);
  const enclave::CryptoSuite suite = config.make_crypto_suite();

  const enclave::ScenarioKind kind = enclave::scenario_from_name(scenario);

  if (kind == enclave::ScenarioKind::Honest && enclave::is_angle_function(f)) {
    // Honest rotation session against an honest |+> source; checks that the
    // states handed to the server match the client's angle vector.
    const std::size_t n = (f == "angles") ? x.size() : 3;
    QuantumRegister reg(config.max_qubits);
    enclave::QuantumSourcePort port;
    port.reg = &reg;
    std::vector<HandleId> handles;
    for (std::size_t i = 0; i < n; ++i) {
      const HandleId h = reg.add_pure(StateVector::plus_state(), "enclave");
      port.qubits.push_back(h);
      handles.push_back(h);
    }
    const auto session =
        enclave::run_session(enclave::SessionKind::Rsr, f, x, suite, config.seed, port);
    out.report.add_parameter("session", "rsr");
    out.transcript_text = transcript_to_jsonl(session.transcript);
    add_check(out.report, "status-failures", "enclave-status",
              session.outcome.status == "success" ? 0.0 : 1.0, 0.0);
    if (session.outcome.status == "success") {
      double max_dist = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const DensityMatrix got = reg.reduced_state(handles[i]);
        const DensityMatrix want = z_rotate_density(
            session.client_angles[i],
            DensityMatrix::pure(StateVector::plus_state()));
        max_dist = std::max(max_dist, trace_distance(got, want));
      }
      add_check(out.report, "rotation-state-max-distance", max_dist,
                config.tolerance_equality);
    }
    out.report.logical_cost = n;
    out.exit_code = out.report.pass ? 0 : 2;
    return out;
  }

  const auto outcome =
      enclave::run_scenario(kind, enclave::SessionKind::Outsrc, f, x, suite, config.seed);
  out.report.add_parameter("session", "outsrc");
  out.report.add_parameter("outcome", outcome.label);
  out.transcript_text = transcript_to_jsonl(outcome.transcript);

  std::string expected;
  switch (kind) {
    case enclave::ScenarioKind::Honest: expected = "success"; break;
    case enclave::ScenarioKind::ForgeAttestation: expected = "sig-failure"; break;
    case enclave::ScenarioKind::TamperCt: expected = "decryption-abort"; break;
    case enclave::ScenarioKind::ReplayCt: expected = "replay-abort"; break;
    case enclave::ScenarioKind::SubstituteCtOut: expected = "authenc-failure"; break;
  }
  add_check(out.report, "outcome-mismatches", "unexpected-outcome",
            outcome.label == expected ? 0.0 : 1.0, 0.0);

  if (kind == enclave::ScenarioKind::Honest) {
    const auto want = enclave::apply_outsrc_function(f, x);
    add_check(out.report, "result-mismatches", "wrong-result",
              outcome.result == want ? 0.0 : 1.0, 0.0);
  }
  out.report.logical_cost = 1;
  out.exit_code = out.report.pass ? 0 : 2;
  return out;
}

ExperimentOutput cmd_selftest(const Config& config, const SelftestOptions& options) {
  ExperimentOutput out;
  out.report.experiment = "selftest";
  out.report.add_parameter("seed", std::to_string(config.seed));
  Prng rng(config.seed);
  const double tol = config.tolerance_equality;

  // Angle arithmetic closes over the grid.
  {
    double dev = 0.0;
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        const Angle s = Angle::from_index(a) + Angle::from_index(b);
        dev = std::max(dev, std::abs(static_cast<double>(s.index() - ((a + b) % 8))));
        const Angle anti = Angle::from_index(a).antipode().antipode();
        dev = std::max(dev, std::abs(static_cast<double>(anti.index() - a)));
      }
    add_check(out.report, "angle-grid-closure", dev, 0.0);
  }

  // Gates preserve trace and Hermiticity.
  {
    double dev = 0.0;
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 1 + t % 3;
      DensityMatrix rho = random_mixed_state(n, rng);
      const std::size_t target = rng.uniform_below(n);
      const gates::Kind kinds[] = {gates::Kind::X, gates::Kind::Y, gates::Kind::Z,
                                   gates::Kind::H, gates::Kind::ZRot};
      const auto kind = kinds[t % 5];
      rho.apply(gates::matrix_for(kind, Angle::from_index(t % 8)), target);
      dev = std::max(dev, std::abs(std::real(rho.matrix().trace()) - 1.0));
      dev = std::max(dev, rho.matrix().max_abs_diff(rho.matrix().adjoint()));
    }
    add_check(out.report, "gate-trace-hermiticity", dev, tol);
  }

  // Rotation inverse and antipodal-sum independence.
  {
    double dev = 0.0;
    for (int t = 0; t < 50; ++t) {
      const std::size_t aux = t % 3;
      const DensityMatrix rho = (t % 2) ? random_mixed_state(1 + aux, rng)
                                        : DensityMatrix::pure(random_pure_state(1 + aux, rng));
      const Angle th = Angle::from_index(t % 8);
      const DensityMatrix back = z_rotate_density(th.negated(), z_rotate_density(th, rho));
      dev = std::max(dev, back.matrix().max_abs_diff(rho.matrix()));

      const ComplexMatrix ref = z_rotate_block_matrix(Angle::from_index(0), rho.matrix()) +
                                z_rotate_block_matrix(Angle::from_index(4), rho.matrix());
      for (int k = 1; k < 4; ++k) {
        const Angle a = Angle::from_index(k);
        const ComplexMatrix sum = z_rotate_block_matrix(a, rho.matrix()) +
                                  z_rotate_block_matrix(a.antipode(), rho.matrix());
        dev = std::max(dev, sum.max_abs_diff(ref));
      }
    }
    add_check(out.report, "rotation-inverse-and-antipodal-sum", dev, tol);
  }

  // Measurement decomposition: averaging conditional outcomes reproduces the
  // reduced state.
  {
    double dev = 0.0;
    for (int t = 0; t < 20; ++t) {
      const DensityMatrix rho = random_mixed_state(2, rng);
      const Angle delta = Angle::from_index(t % 8);
      DensityMatrix rho0 = rho, rho1 = rho;
      const double p0 = rho0.project_and_remove(0, delta, 0);
      const double p1 = rho1.project_and_remove(0, delta, 1);
      dev = std::max(dev, std::abs(p0 + p1 - 1.0));
      ComplexMatrix mix = rho0.matrix();
      mix *= cplx{p0, 0.0};
      ComplexMatrix m1 = rho1.matrix();
      m1 *= cplx{p1, 0.0};
      mix += m1;
      const DensityMatrix reduced =
          rho.partial_trace_keep(std::array<std::size_t, 1>{1});
      dev = std::max(dev, mix.max_abs_diff(reduced.matrix()));
    }
    add_check(out.report, "measurement-decomposition", dev, tol);
  }

  // Weak correlation: rotation families pass, the counterexample fails.
  {
    int violations = 0;
    for (int t = 0; t < 5; ++t) {
      const DensityMatrix rho = random_mixed_state(1, rng);
      if (!ac::weak_correlation_check(ac::StateFamily::rotations_of(rho.matrix())))
        ++violations;
    }
    ac::StateFamily counterexample = ac::StateFamily::plus_states();
    if (!options.corrupt_weak_correlation_fixture) {
      // |0><0| in one slot breaks the antipodal pair sum.
      ComplexMatrix zero(2, 2);
      zero.at(0, 0) = 1.0;
      counterexample.set(Angle::from_index(2), zero);
    }
    if (ac::weak_correlation_check(counterexample)) ++violations;
    add_check(out.report, "weak-correlation-checks", "weak-correlation-violation",
              static_cast<double>(violations), 0.0);
  }

  // Construction correctness and security at small trial count.
  {
    const auto result = ac::run_equivalence_suite(6, rng, config.max_qubits);
    add_check(out.report, "construction-correctness-distance", result.correctness, tol);
    add_check(out.report, "construction-security-distance-max", result.max_security, tol);
  }

  // Protocol vs direct pattern simulation, plus preparation equivalence.
  {
    const auto graph = ubqc::PatternGraph::build(1, 2, ubqc::GraphKind::LinearCluster);
    const ubqc::Pattern pattern(graph, {Angle::from_index(1), Angle::from_index(0)});
    double fdev = 0.0, pdev = 0.0;
    const auto direct = ubqc::enumerate_signal_branches(
        pattern, ubqc::Preparation::DirectQuantum, config.seed, config.max_qubits);
    for (const auto& backend : {ubqc::Preparation::Rsp, ubqc::Preparation::Rsr}) {
      const auto other = ubqc::enumerate_signal_branches(pattern, backend, config.seed,
                                                         config.max_qubits);
      for (std::size_t b = 0; b < direct.size(); ++b) {
        pdev = std::max(pdev, std::abs(direct[b].branch_probability -
                                       other[b].branch_probability));
        fdev = std::max(fdev, trace_distance(direct[b].client_output,
                                             other[b].client_output));
      }
    }
    for (const auto& branch : direct) {
      const auto oracle = ubqc::reference_branch(pattern, branch.recorded_signals);
      fdev = std::max(fdev,
                      1.0 - fidelity_with_pure(branch.client_output, oracle.output));
      pdev = std::max(pdev, std::abs(branch.branch_probability - oracle.probability));
    }
    add_check(out.report, "ubqc-oracle-deficit", fdev, tol);
    add_check(out.report, "ubqc-probability-deficit", pdev, tol);

    const ubqc::Pattern pattern2(graph, {Angle::from_index(5), Angle::from_index(3)});
    const auto tv = ubqc::total_variation(
        ubqc::server_view_distribution(pattern, config.enumeration_bound),
        ubqc::server_view_distribution(pattern2, config.enumeration_bound));
    add_check(out.report, "ubqc-blindness-tv", "blindness-violation", tv.value(), 0.0);
  }

  // Enclave round trips and crypto contracts.
  {
    const enclave::CryptoSuite suite = config.make_crypto_suite();
    int violations = 0;
    const auto honest = enclave::run_scenario(enclave::ScenarioKind::Honest,
                                              enclave::SessionKind::Outsrc, "sum",
                                              {1, 2, 3}, suite, config.seed);
    if (honest.label != "success" || honest.result != std::vector<std::int64_t>{6})
      ++violations;
    const auto forged = enclave::run_scenario(enclave::ScenarioKind::ForgeAttestation,
                                              enclave::SessionKind::Outsrc, "sum",
                                              {1, 2, 3}, suite, config.seed + 1);
    if (forged.label != "sig-failure") ++violations;
    const auto tampered = enclave::run_scenario(enclave::ScenarioKind::TamperCt,
                                                enclave::SessionKind::Outsrc, "sum",
                                                {1, 2, 3}, suite, config.seed + 2);
    if (tampered.label != "decryption-abort") ++violations;
    const auto replayed = enclave::run_scenario(enclave::ScenarioKind::ReplayCt,
                                                enclave::SessionKind::Outsrc, "sum",
                                                {1, 2, 3}, suite, config.seed + 3);
    if (replayed.label != "replay-abort") ++violations;
    add_check(out.report, "enclave-scenario-violations", "enclave-scenario",
              static_cast<double>(violations), 0.0);

    Prng crng(config.seed ^ 0xC0FFEE);
    const auto keys = suite.signature->keygen(crng);
    const enclave::Bytes msg{1, 2, 3, 4};
    auto sig = suite.signature->sign(keys.secret_key, msg);
    int crypto_violations = 0;
    if (!suite.signature->verify(keys.public_key, msg, sig)) ++crypto_violations;
    sig.front() ^= 0x01;
    if (suite.signature->verify(keys.public_key, msg, sig)) ++crypto_violations;
    enclave::Bytes key(suite.ae->key_size(), 0x42);
    auto ct = suite.ae->encrypt(key, 7, msg);
    if (suite.ae->decrypt(key, ct) != msg) ++crypto_violations;
    ct.back() ^= 0x01;
    if (suite.ae->decrypt(key, ct).has_value()) ++crypto_violations;
    add_check(out.report, "crypto-contract-violations", "crypto-contract",
              static_cast<double>(crypto_violations), 0.0);
  }

  out.report.logical_cost = out.report.quantities.size();
  out.exit_code = out.report.pass ? 0 : 2;
  return out;
}

ubqc::PatternGraph load_pattern_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pattern file: " + path);
  int n = -1, m = -1;
  std::string kind_name;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "n") ls >> n;
    else if (key == "m") ls >> m;
    else if (key == "kind") ls >> kind_name;
    else throw ConfigError("unknown pattern key: " + key);
  }
  if (n < 1 || m < 1 || kind_name.empty())
    throw ConfigError("pattern file must set n, m and kind");
  ubqc::GraphKind kind;
  if (kind_name == "linear-cluster") kind = ubqc::GraphKind::LinearCluster;
  else if (kind_name == "brickwork") kind = ubqc::GraphKind::Brickwork;
  else throw ConfigError("unknown pattern kind: " + kind_name);
  try {
    return ubqc::PatternGraph::build(n, m, kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid pattern dimensions: ") + e.what());
  }
}

std::vector<Angle> load_phi_file(const std::string& path, std::size_t expected_count) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open angle file: " + path);
  std::vector<Angle> out;
  std::string token;
  while (in >> token) {
    if (token.front() == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    try {
      out.push_back(Angle::from_index(std::stoi(token)));
    } catch (const std::exception&) {
      throw ConfigError("invalid angle token: " + token);
    }
  }
  if (out.size() != expected_count)
    throw ConfigError("angle file holds " + std::to_string(out.size()) +
                      " entries, expected " + std::to_string(expected_count));
  return out;
}

ubqc::Pattern load_pattern(const std::string& pattern_path, const std::string& phi_path) {
  ubqc::PatternGraph graph = load_pattern_graph(pattern_path);
  std::vector<Angle> phi = load_phi_file(phi_path, graph.measured_count());
  return ubqc::Pattern(std::move(graph), std::move(phi));
}

ubqc::Preparation backend_from_name(const std::string& name) {
  if (name == "direct") return ubqc::Preparation::DirectQuantum;
  if (name == "rsp") return ubqc::Preparation::Rsp;
  if (name == "rsr") return ubqc::Preparation::Rsr;
  throw ConfigError("unknown backend: " + name);
}

}  // namespace qesim::harness
