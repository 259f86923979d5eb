#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qesim/enclave/crypto.hpp"

namespace qesim::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::uint64_t seed = 1;
  double tolerance_validity = 1e-9;
  double tolerance_equality = 1e-12;
  std::size_t max_qubits = 12;
  std::uint64_t enumeration_bound = 10000000;
  std::string crypto_instance = "standard";  // "toy" | "standard"
  std::uint64_t group_modulus = 0;           // 0 = instance default
  std::uint64_t group_generator = 0;

  void validate() const;  // throws ConfigError
  enclave::CryptoSuite make_crypto_suite() const;

  // JSON object with any subset of the field names above.
  static Config from_json_text(const std::string& text);
  static Config from_file(const std::string& path);
  // --config path, then the QESIM_CONFIG environment variable, then defaults.
  static Config resolve(const std::string& config_path_flag);
};

}  // namespace qesim::harness
