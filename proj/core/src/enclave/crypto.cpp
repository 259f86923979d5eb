#include "qesim/enclave/crypto.hpp"

#include <openssl/evp.h>
#include <openssl/sha.h>

#include <cstring>
#include <stdexcept>

namespace qesim::enclave {

Bytes sha256(const Bytes& data) {
  Bytes out(SHA256_DIGEST_LENGTH);
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, out.data(), &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  out.resize(len);
  return out;
}

void append_u32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_u64(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t read_u32(const Bytes& in, std::size_t& off) {
  if (off + 4 > in.size()) throw std::runtime_error("truncated encoding");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[off + i]) << (8 * i);
  off += 4;
  return v;
}

std::uint64_t read_u64(const Bytes& in, std::size_t& off) {
  if (off + 8 > in.size()) throw std::runtime_error("truncated encoding");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[off + i]) << (8 * i);
  off += 8;
  return v;
}

namespace {

Bytes random_bytes(Prng& rng, std::size_t n) {
  Bytes out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<std::uint8_t>(rng.next_u64() & 0xff);
  return out;
}

Bytes keyed_digest(const Bytes& key, std::uint8_t domain, const Bytes& message) {
  Bytes buf;
  buf.reserve(key.size() + message.size() + 16);
  append_u32(buf, static_cast<std::uint32_t>(key.size()));
  buf.insert(buf.end(), key.begin(), key.end());
  buf.push_back(domain);
  append_u32(buf, static_cast<std::uint32_t>(message.size()));
  buf.insert(buf.end(), message.begin(), message.end());
  return sha256(buf);
}

}  // namespace

SignatureScheme::KeyPair ToySignature::keygen(Prng& rng) const {
  Bytes k = random_bytes(rng, 32);
  return {k, k};
}

Bytes ToySignature::sign(const Bytes& secret_key, const Bytes& message) const {
  return keyed_digest(secret_key, 0x51, message);
}

bool ToySignature::verify(const Bytes& public_key, const Bytes& message,
                          const Bytes& signature) const {
  return keyed_digest(public_key, 0x51, message) == signature;
}

namespace {

struct EvpKeyDeleter {
  void operator()(EVP_PKEY* k) const { EVP_PKEY_free(k); }
};
using EvpKey = std::unique_ptr<EVP_PKEY, EvpKeyDeleter>;

EvpKey ed25519_private(const Bytes& seed) {
  EVP_PKEY* k = EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(),
                                             seed.size());
  if (!k) throw std::runtime_error("ed25519 private key import failed");
  return EvpKey(k);
}

}  // namespace

SignatureScheme::KeyPair Ed25519Signature::keygen(Prng& rng) const {
  // Raw 32-byte seed from the injected generator keeps keygen reproducible.
  Bytes seed = random_bytes(rng, 32);
  EvpKey key = ed25519_private(seed);
  Bytes pub(32);
  std::size_t publen = pub.size();
  if (EVP_PKEY_get_raw_public_key(key.get(), pub.data(), &publen) != 1)
    throw std::runtime_error("ed25519 public key export failed");
  pub.resize(publen);
  return {pub, seed};
}

Bytes Ed25519Signature::sign(const Bytes& secret_key, const Bytes& message) const {
  EvpKey key = ed25519_private(secret_key);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  Bytes sig(64);
  std::size_t siglen = sig.size();
  const bool ok = ctx &&
                  EVP_DigestSignInit(ctx, nullptr, nullptr, nullptr, key.get()) == 1 &&
                  EVP_DigestSign(ctx, sig.data(), &siglen, message.data(),
                                 message.size()) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("ed25519 signing failed");
  sig.resize(siglen);
  return sig;
}

bool Ed25519Signature::verify(const Bytes& public_key, const Bytes& message,
                              const Bytes& signature) const {
  EVP_PKEY* k = EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr,
                                            public_key.data(), public_key.size());
  if (!k) return false;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  const bool ok = ctx &&
                  EVP_DigestVerifyInit(ctx, nullptr, nullptr, nullptr, k) == 1 &&
                  EVP_DigestVerify(ctx, signature.data(), signature.size(),
                                   message.data(), message.size()) == 1;
  EVP_MD_CTX_free(ctx);
  EVP_PKEY_free(k);
  return ok;
}

Bytes ToyAe::encrypt(const Bytes& key, std::uint64_t nonce, const Bytes& plaintext) const {
  Bytes framed;
  append_u32(framed, static_cast<std::uint32_t>(plaintext.size()));
  framed.insert(framed.end(), plaintext.begin(), plaintext.end());
  if (pad_) {
    while (framed.size() % bucket_ != 0) framed.push_back(0);
  }

  Bytes ct;
  append_u64(ct, nonce);
  // Keystream blocks: keyed digest of (nonce, block counter).
  Bytes block_input;
  for (std::size_t i = 0; i < framed.size(); ++i) {
    if (i % 32 == 0) {
      Bytes counter;
      append_u64(counter, nonce);
      append_u64(counter, i / 32);
      block_input = keyed_digest(key, 0xEA, counter);
    }
    ct.push_back(framed[i] ^ block_input[i % 32]);
  }
  Bytes tag_input = ct;
  const Bytes tag = keyed_digest(key, 0xEB, tag_input);
  ct.insert(ct.end(), tag.begin(), tag.begin() + 16);
  return ct;
}

std::optional<Bytes> ToyAe::decrypt(const Bytes& key, const Bytes& ciphertext) const {
  if (ciphertext.size() < 8 + 16) return std::nullopt;
  Bytes body(ciphertext.begin(), ciphertext.end() - 16);
  const Bytes tag(ciphertext.end() - 16, ciphertext.end());
  const Bytes expect = keyed_digest(key, 0xEB, body);
  if (!std::equal(tag.begin(), tag.end(), expect.begin())) return std::nullopt;

  std::size_t off = 0;
  const std::uint64_t nonce = read_u64(body, off);
  Bytes framed;
  Bytes block_input;
  for (std::size_t i = 0; i + off < body.size(); ++i) {
    if (i % 32 == 0) {
      Bytes counter;
      append_u64(counter, nonce);
      append_u64(counter, i / 32);
      block_input = keyed_digest(key, 0xEA, counter);
    }
    framed.push_back(body[i + off] ^ block_input[i % 32]);
  }
  std::size_t foff = 0;
  std::uint32_t len;
  try {
    len = read_u32(framed, foff);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (foff + len > framed.size()) return std::nullopt;
  return Bytes(framed.begin() + static_cast<std::ptrdiff_t>(foff),
               framed.begin() + static_cast<std::ptrdiff_t>(foff + len));
}

Bytes AesGcmAe::encrypt(const Bytes& key, std::uint64_t nonce,
                        const Bytes& plaintext) const {
  if (key.size() != 32) throw std::invalid_argument("aes-256-gcm needs a 32-byte key");
  Bytes iv(12, 0);
  for (int i = 0; i < 8; ++i) iv[static_cast<std::size_t>(i)] =
      static_cast<std::uint8_t>(nonce >> (8 * i));

  Bytes out;
  append_u64(out, nonce);
  out.resize(8 + plaintext.size() + 16);

  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  int len = 0;
  int total = 0;
  bool ok = ctx && EVP_EncryptInit_ex(ctx, EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx, EVP_CTRL_GCM_SET_IVLEN, 12, nullptr) == 1 &&
            EVP_EncryptInit_ex(ctx, nullptr, nullptr, key.data(), iv.data()) == 1;
  if (ok && !plaintext.empty())
    ok = EVP_EncryptUpdate(ctx, out.data() + 8, &len, plaintext.data(),
                           static_cast<int>(plaintext.size())) == 1;
  total = len;
  if (ok) ok = EVP_EncryptFinal_ex(ctx, out.data() + 8 + total, &len) == 1;
  total += len;
  if (ok)
    ok = EVP_CIPHER_CTX_ctrl(ctx, EVP_CTRL_GCM_GET_TAG, 16,
                             out.data() + 8 + plaintext.size()) == 1;
  EVP_CIPHER_CTX_free(ctx);
  if (!ok || total != static_cast<int>(plaintext.size()))
    throw std::runtime_error("aes-gcm encryption failed");
  return out;
}

std::optional<Bytes> AesGcmAe::decrypt(const Bytes& key, const Bytes& ciphertext) const {
  if (key.size() != 32) throw std::invalid_argument("aes-256-gcm needs a 32-byte key");
  if (ciphertext.size() < 8 + 16) return std::nullopt;
  std::size_t off = 0;
  const std::uint64_t nonce = read_u64(ciphertext, off);
  Bytes iv(12, 0);
  for (int i = 0; i < 8; ++i) iv[static_cast<std::size_t>(i)] =
      static_cast<std::uint8_t>(nonce >> (8 * i));
  const std::size_t body_len = ciphertext.size() - 8 - 16;

  Bytes tag(ciphertext.end() - 16, ciphertext.end());
  Bytes out(body_len);
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  int len = 0;
  int total = 0;
  bool ok = ctx && EVP_DecryptInit_ex(ctx, EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx, EVP_CTRL_GCM_SET_IVLEN, 12, nullptr) == 1 &&
            EVP_DecryptInit_ex(ctx, nullptr, nullptr, key.data(), iv.data()) == 1;
  if (ok && body_len > 0)
    ok = EVP_DecryptUpdate(ctx, out.data(), &len, ciphertext.data() + 8,
                           static_cast<int>(body_len)) == 1;
  total = len;
  if (ok)
    ok = EVP_CIPHER_CTX_ctrl(ctx, EVP_CTRL_GCM_SET_TAG, 16, tag.data()) == 1 &&
         EVP_DecryptFinal_ex(ctx, out.data() + total, &len) == 1;
  EVP_CIPHER_CTX_free(ctx);
  if (!ok) return std::nullopt;
  return out;
}

std::uint64_t DhGroup::power(std::uint64_t base, std::uint64_t exponent) const {
  unsigned __int128 acc = 1;
  unsigned __int128 b = base % modulus;
  std::uint64_t e = exponent;
  while (e > 0) {
    if (e & 1) acc = (acc * b) % modulus;
    b = (b * b) % modulus;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t DhGroup::random_exponent(Prng& rng) const {
  return 1 + rng.uniform_below(modulus - 2);
}

DhGroup DhGroup::standard() { return {2305843009213691579ULL, 4}; }

DhGroup DhGroup::toy() { return {23, 4}; }

Bytes derive_key(const DhGroup& group, std::uint64_t shared_element,
                 std::size_t key_size) {
  Bytes input;
  append_u64(input, group.modulus);
  append_u64(input, group.generator);
  append_u64(input, shared_element);
  Bytes key = keyed_digest(Bytes{'k', 'd', 'f'}, 0x4B, input);
  while (key.size() < key_size) {
    Bytes more = key;
    more.push_back(0x01);
    const Bytes next = sha256(more);
    key.insert(key.end(), next.begin(), next.end());
  }
  key.resize(key_size);
  return key;
}

CryptoSuite CryptoSuite::toy() {
  CryptoSuite s;
  s.signature = std::make_shared<ToySignature>();
  s.ae = std::make_shared<ToyAe>();
  s.group = DhGroup::toy();
  s.eid_bytes = 8;
  return s;
}

CryptoSuite CryptoSuite::standard() {
  CryptoSuite s;
  s.signature = std::make_shared<Ed25519Signature>();
  s.ae = std::make_shared<AesGcmAe>();
  s.group = DhGroup::standard();
  s.eid_bytes = 32;
  return s;
}

}  // namespace qesim::enclave
