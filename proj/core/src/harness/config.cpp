#include "qesim/harness/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qesim::harness {

void Config::validate() const {
  if (tolerance_validity <= 0 || tolerance_equality <= 0)
    throw ConfigError("tolerances must be positive");
  if (max_qubits == 0 || max_qubits > 24)
    throw ConfigError("max_qubits must be in [1, 24]");
  if (enumeration_bound == 0) throw ConfigError("enumeration_bound must be positive");
  if (crypto_instance != "toy" && crypto_instance != "standard")
    throw ConfigError("crypto_instance must be 'toy' or 'standard'");
  if (group_modulus != 0 && group_modulus < 5)
    throw ConfigError("group_modulus must be at least 5");
}

enclave::CryptoSuite Config::make_crypto_suite() const {
  enclave::CryptoSuite suite = (crypto_instance == "toy")
                                   ? enclave::CryptoSuite::toy()
                                   : enclave::CryptoSuite::standard();
  if (group_modulus != 0) suite.group.modulus = group_modulus;
  if (group_generator != 0) suite.group.generator = group_generator;
  return suite;
}

Config Config::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  Config c;
  try {
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerance_validity"))
      c.tolerance_validity = j["tolerance_validity"].get<double>();
    if (j.contains("tolerance_equality"))
      c.tolerance_equality = j["tolerance_equality"].get<double>();
    if (j.contains("max_qubits")) c.max_qubits = j["max_qubits"].get<std::size_t>();
    if (j.contains("enumeration_bound"))
      c.enumeration_bound = j["enumeration_bound"].get<std::uint64_t>();
    if (j.contains("crypto_instance"))
      c.crypto_instance = j["crypto_instance"].get<std::string>();
    if (j.contains("group_modulus"))
      c.group_modulus = j["group_modulus"].get<std::uint64_t>();
    if (j.contains("group_generator"))
      c.group_generator = j["group_generator"].get<std::uint64_t>();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  c.validate();
  return c;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

Config Config::resolve(const std::string& config_path_flag) {
  if (!config_path_flag.empty()) return from_file(config_path_flag);
  if (const char* env = std::getenv("QESIM_CONFIG"); env && *env)
    return from_file(env);
  Config c;
  c.validate();
  return c;
}

}  // namespace qesim::harness
