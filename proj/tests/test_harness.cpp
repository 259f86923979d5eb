#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qesim/harness/config.hpp"
#include "qesim/harness/experiments.hpp"
#include "qesim/harness/report.hpp"

using namespace qesim;
using namespace qesim::harness;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/qesim_test_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("config defaults validate and parse from json") {
  Config c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.seed == 1);
  CHECK(c.tolerance_validity == 1e-9);
  CHECK(c.tolerance_equality == 1e-12);
  CHECK(c.max_qubits == 12);
  CHECK(c.enumeration_bound == 10000000);

  const Config parsed = Config::from_json_text(
      R"({"seed": 77, "max_qubits": 8, "crypto_instance": "toy",
          "enumeration_bound": 5000, "tolerance_equality": 1e-10})");
  CHECK(parsed.seed == 77);
  CHECK(parsed.max_qubits == 8);
  CHECK(parsed.crypto_instance == "toy");
  CHECK(parsed.enumeration_bound == 5000);

  CHECK_THROWS_AS(Config::from_json_text(R"({"tolerance_equality": -1})"), ConfigError);
  CHECK_THROWS_AS(Config::from_json_text(R"({"crypto_instance": "bogus"})"), ConfigError);
  CHECK_THROWS_AS(Config::from_json_text("not json"), ConfigError);
}

TEST_CASE("config resolves from file and environment") {
  TempFile file("config.json", R"({"seed": 31})");
  const Config from_flag = Config::resolve(file.path);
  CHECK(from_flag.seed == 31);

  setenv("QESIM_CONFIG", file.path.c_str(), 1);
  const Config from_env = Config::resolve("");
  CHECK(from_env.seed == 31);
  unsetenv("QESIM_CONFIG");

  const Config defaults = Config::resolve("");
  CHECK(defaults.seed == 1);
}

TEST_CASE("crypto suite selection follows the config") {
  Config c;
  c.crypto_instance = "toy";
  CHECK(c.make_crypto_suite().signature->name() == "toy-keyed-digest");
  c.crypto_instance = "standard";
  CHECK(c.make_crypto_suite().signature->name() == "ed25519");
  c.group_modulus = 23;
  c.group_generator = 4;
  CHECK(c.make_crypto_suite().group.modulus == 23);
}

TEST_CASE("reports serialize deterministically") {
  ExperimentReport r;
  r.experiment = "demo";
  r.add_parameter("seed", "7");
  r.add_quantity("distance", 1e-15, 1e-12, true);
  r.add_quantity("failing", 0.5, 1e-12, false);
  CHECK_FALSE(r.pass);
  CHECK(r.failure_name == "failing");
  const std::string a = r.to_json();
  const std::string b = r.to_json();
  CHECK(a == b);
  CHECK(a.find("\"tolerance\": 1e-12") != std::string::npos);
}

TEST_CASE("pattern and angle files load") {
  TempFile pat("pattern.txt", "# demo\nn 1\nm 2\nkind linear-cluster\n");
  TempFile phi("phi.txt", "1 0\n");
  const auto pattern = load_pattern(pat.path, phi.path);
  CHECK(pattern.graph().rows() == 1);
  CHECK(pattern.graph().measured_columns() == 2);
  CHECK(pattern.phi_at(0) == Angle::from_index(1));

  TempFile bad_phi("bad_phi.txt", "1 2 3\n");
  CHECK_THROWS_AS(load_pattern(pat.path, bad_phi.path), ConfigError);
  TempFile bad_pat("bad_pattern.txt", "n 1\nm 2\nkind hexagonal\n");
  CHECK_THROWS_AS(load_pattern_graph(bad_pat.path), ConfigError);
  TempFile bad_dims("bad_dims.txt", "n 2\nm 3\nkind brickwork\n");
  CHECK_THROWS_AS(load_pattern_graph(bad_dims.path), ConfigError);
  CHECK_THROWS_AS(load_pattern_graph("/nonexistent/p.txt"), ConfigError);

  CHECK(backend_from_name("direct") == ubqc::Preparation::DirectQuantum);
  CHECK(backend_from_name("rsp") == ubqc::Preparation::Rsp);
  CHECK(backend_from_name("rsr") == ubqc::Preparation::Rsr);
  CHECK_THROWS_AS(backend_from_name("quantum-fax"), ConfigError);
}

TEST_CASE("equivalence experiment reports pass at defaults") {
  Config c;
  c.crypto_instance = "toy";
  const auto out = cmd_equivalence(c, 5);
  CHECK(out.exit_code == 0);
  CHECK(out.report.pass);
  CHECK(out.report.quantities.size() == 3);
  for (const auto& q : out.report.quantities) CHECK(q.pass);

  const auto empty = cmd_equivalence(c, 0);
  CHECK(empty.exit_code == 0);
  CHECK(empty.report.quantities.empty());
}

TEST_CASE("ubqc experiment reports agree across backends") {
  TempFile pat("ubqc_pattern.txt", "n 1\nm 2\nkind linear-cluster\n");
  TempFile phi("ubqc_phi.txt", "1 0\n");
  TempFile phi2("ubqc_phi2.txt", "5 3\n");
  Config c;

  const auto direct = cmd_ubqc(c, pat.path, phi.path, phi2.path, "direct");
  CHECK(direct.exit_code == 0);
  CHECK(direct.report.pass);
  CHECK_FALSE(direct.transcript_text.empty());

  const auto rsr = cmd_ubqc(c, pat.path, phi.path, phi2.path, "rsr");
  CHECK(rsr.exit_code == 0);
  // Identical quantities across backends.
  REQUIRE(direct.report.quantities.size() == rsr.report.quantities.size());
  for (std::size_t i = 0; i < direct.report.quantities.size(); ++i) {
    CHECK(direct.report.quantities[i].name == rsr.report.quantities[i].name);
    CHECK(direct.report.quantities[i].value ==
          doctest::Approx(rsr.report.quantities[i].value).epsilon(1e-12));
  }
}

TEST_CASE("ubqc experiment flags the enumeration bound") {
  TempFile pat("bw_pattern.txt", "n 2\nm 4\nkind brickwork\n");
  TempFile phi("bw_phi.txt", "0 0 0 0 0 0 0 0\n");
  TempFile phi2("bw_phi2.txt", "1 1 1 1 1 1 1 1\n");
  Config c;
  // The signal enumeration fits, but the view enumeration does not.
  const auto out = cmd_ubqc(c, pat.path, phi.path, phi2.path, "direct");
  CHECK(out.exit_code == 4);
  CHECK(out.report.failure_name == "enumeration-bound-exceeded");
}

TEST_CASE("enclave experiment covers honest and adversarial scenarios") {
  Config c;
  c.crypto_instance = "toy";
  const auto honest = cmd_enclave(c, "honest", "sum", {1, 2, 3});
  CHECK(honest.exit_code == 0);
  CHECK(honest.report.pass);

  const auto rsr = cmd_enclave(c, "honest", "angles", {1, 5, 2});
  CHECK(rsr.exit_code == 0);
  CHECK(rsr.report.pass);

  for (const std::string scenario :
       {"forge-attestation", "tamper-ct", "replay-ct", "substitute-ctout"}) {
    const auto out = cmd_enclave(c, scenario, "sum", {1, 2, 3});
    CHECK(out.exit_code == 0);
    CHECK(out.report.pass);
  }
  CHECK_THROWS_AS(cmd_enclave(c, "meltdown", "sum", {1}), std::invalid_argument);
}

TEST_CASE("selftest passes at defaults and flags corrupted fixtures") {
  Config c;
  c.crypto_instance = "toy";
  const auto ok = cmd_selftest(c);
  CHECK(ok.exit_code == 0);
  CHECK(ok.report.pass);

  SelftestOptions corrupt;
  corrupt.corrupt_weak_correlation_fixture = true;
  const auto bad = cmd_selftest(c, corrupt);
  CHECK(bad.exit_code == 2);
  CHECK(bad.report.failure_name == "weak-correlation-violation");
}

TEST_CASE("selftest at an unreachable tolerance reports tolerance-induced failures") {
  Config c;
  c.crypto_instance = "toy";
  c.tolerance_equality = 1e-20;
  const auto out = cmd_selftest(c);
  CHECK(out.exit_code == 2);
  CHECK(out.report.failure_name.rfind("tolerance-induced:", 0) == 0);
}

TEST_CASE("experiment outputs are byte-identical for identical config and seed") {
  Config c;
  c.crypto_instance = "toy";
  c.seed = 555;
  const auto a = cmd_enclave(c, "honest", "sum", {4, 5});
  const auto b = cmd_enclave(c, "honest", "sum", {4, 5});
  CHECK(a.report.to_json() == b.report.to_json());
  CHECK(a.transcript_text == b.transcript_text);

  TempFile pat("det_pattern.txt", "n 1\nm 2\nkind linear-cluster\n");
  TempFile phi("det_phi.txt", "3 4\n");
  const auto u1 = cmd_ubqc(c, pat.path, phi.path, "", "rsr");
  const auto u2 = cmd_ubqc(c, pat.path, phi.path, "", "rsr");
  CHECK(u1.report.to_json() == u2.report.to_json());
  CHECK(u1.transcript_text == u2.transcript_text);
}

TEST_CASE("transcript jsonl serialization is stable and hex encoded") {
  Transcript t;
  t.append("client", "demo", {0xde, 0xad});
  auto& rec = t.append("server", "other");
  rec.attrs.emplace_back("k", "3");
  const std::string text = transcript_to_jsonl(t);
  CHECK(text.find("\"payload_hex\":\"dead\"") != std::string::npos);
  CHECK(text.find("\"k\":\"3\"") != std::string::npos);
  CHECK(text == transcript_to_jsonl(t));
}
