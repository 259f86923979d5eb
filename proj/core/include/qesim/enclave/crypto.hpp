#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qesim/prng.hpp"

namespace qesim::enclave {

using Bytes = std::vector<std::uint8_t>;

Bytes sha256(const Bytes& data);

void append_u32(Bytes& out, std::uint32_t v);
void append_u64(Bytes& out, std::uint64_t v);
std::uint32_t read_u32(const Bytes& in, std::size_t& off);
std::uint64_t read_u64(const Bytes& in, std::size_t& off);

// Contract-typed signature scheme. Two instances: a deterministic toy one
// for protocol-logic tests and an Ed25519 one. Key material for both comes
// from the injected Prng so runs stay reproducible.
class SignatureScheme {
 public:
  struct KeyPair {
    Bytes public_key;  // mpk
    Bytes secret_key;  // msk
  };

  virtual ~SignatureScheme() = default;
  virtual std::string name() const = 0;
  virtual KeyPair keygen(Prng& rng) const = 0;
  virtual Bytes sign(const Bytes& secret_key, const Bytes& message) const = 0;
  virtual bool verify(const Bytes& public_key, const Bytes& message,
                      const Bytes& signature) const = 0;
};

// Keyed digest with public_key == secret_key. Intentionally insecure (anyone
// holding mpk can forge); only the correctness/tamper contract holds.
class ToySignature final : public SignatureScheme {
 public:
  std::string name() const override { return "toy-keyed-digest"; }
  KeyPair keygen(Prng& rng) const override;
  Bytes sign(const Bytes& secret_key, const Bytes& message) const override;
  bool verify(const Bytes& public_key, const Bytes& message,
              const Bytes& signature) const override;
};

class Ed25519Signature final : public SignatureScheme {
 public:
  std::string name() const override { return "ed25519"; }
  KeyPair keygen(Prng& rng) const override;
  Bytes sign(const Bytes& secret_key, const Bytes& message) const override;
  bool verify(const Bytes& public_key, const Bytes& message,
              const Bytes& signature) const override;
};

// Authenticated encryption with explicit nonces (the protocol derives them
// from message counters; directions use disjoint counters).
// Ciphertext layout: nonce(8) || body || tag.
class AeScheme {
 public:
  virtual ~AeScheme() = default;
  virtual std::string name() const = 0;
  virtual std::size_t key_size() const = 0;
  virtual Bytes encrypt(const Bytes& key, std::uint64_t nonce,
                        const Bytes& plaintext) const = 0;
  virtual std::optional<Bytes> decrypt(const Bytes& key, const Bytes& ciphertext) const = 0;
};

// Deterministic stream-xor scheme with a keyed digest tag. With padding
// enabled the plaintext is framed and padded to a fixed bucket size, so
// ciphertext length leaks only a coarse size class; the "leaky" variant
// skips padding and leaks the exact plaintext length.
class ToyAe final : public AeScheme {
 public:
  explicit ToyAe(bool pad_to_bucket = true, std::size_t bucket = 64)
      : pad_(pad_to_bucket), bucket_(bucket) {}
  std::string name() const override { return pad_ ? "toy-stream" : "toy-stream-leaky"; }
  std::size_t key_size() const override { return 32; }
  Bytes encrypt(const Bytes& key, std::uint64_t nonce,
                const Bytes& plaintext) const override;
  std::optional<Bytes> decrypt(const Bytes& key, const Bytes& ciphertext) const override;

 private:
  bool pad_;
  std::size_t bucket_;
};

class AesGcmAe final : public AeScheme {
 public:
  std::string name() const override { return "aes-256-gcm"; }
  std::size_t key_size() const override { return 32; }
  Bytes encrypt(const Bytes& key, std::uint64_t nonce,
                const Bytes& plaintext) const override;
  std::optional<Bytes> decrypt(const Bytes& key, const Bytes& ciphertext) const override;
};

// Prime-order-subgroup Diffie-Hellman over a small safe prime. The modulus
// is configurable; exponentiation uses 128-bit intermediates, so moduli up
// to 63 bits are supported.
struct DhGroup {
  std::uint64_t modulus = 0;
  std::uint64_t generator = 0;

  std::uint64_t power(std::uint64_t base, std::uint64_t exponent) const;
  std::uint64_t random_exponent(Prng& rng) const;  // in [1, modulus-1)

  static DhGroup standard();  // 61-bit safe prime
  static DhGroup toy();       // p = 23
};

// Fixed-length AE key from the raw shared group element.
Bytes derive_key(const DhGroup& group, std::uint64_t shared_element,
                 std::size_t key_size);

struct CryptoSuite {
  std::shared_ptr<const SignatureScheme> signature;
  std::shared_ptr<const AeScheme> ae;
  DhGroup group;
  std::size_t eid_bytes = 8;  // lambda / 8

  static CryptoSuite toy();
  static CryptoSuite standard();
};

}  // namespace qesim::enclave
