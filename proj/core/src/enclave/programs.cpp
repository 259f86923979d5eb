#include "qesim/enclave/programs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qesim/gates.hpp"

namespace qesim::enclave {

Bytes encode_i64_list(const std::vector<std::int64_t>& values) {
  Bytes out;
  append_u32(out, static_cast<std::uint32_t>(values.size()));
  for (auto v : values) append_u64(out, static_cast<std::uint64_t>(v));
  return out;
}

std::vector<std::int64_t> decode_i64_list(const Bytes& bytes) {
  std::size_t off = 0;
  const std::uint32_t n = read_u32(bytes, off);
  std::vector<std::int64_t> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    out.push_back(static_cast<std::int64_t>(read_u64(bytes, off)));
  if (off != bytes.size()) throw std::runtime_error("trailing bytes in list encoding");
  return out;
}

Bytes encode_function_call(const std::string& name, const std::vector<std::int64_t>& x) {
  Bytes out;
  append_u32(out, static_cast<std::uint32_t>(name.size()));
  out.insert(out.end(), name.begin(), name.end());
  const Bytes xs = encode_i64_list(x);
  out.insert(out.end(), xs.begin(), xs.end());
  return out;
}

std::pair<std::string, std::vector<std::int64_t>> decode_function_call(const Bytes& bytes) {
  std::size_t off = 0;
  const std::uint32_t name_len = read_u32(bytes, off);
  if (off + name_len > bytes.size()) throw std::runtime_error("truncated function call");
  std::string name(bytes.begin() + static_cast<std::ptrdiff_t>(off),
                   bytes.begin() + static_cast<std::ptrdiff_t>(off + name_len));
  off += name_len;
  Bytes rest(bytes.begin() + static_cast<std::ptrdiff_t>(off), bytes.end());
  return {std::move(name), decode_i64_list(rest)};
}

namespace {

const std::vector<std::string> kOutsrcNames = {
    "identity", "sum", "product", "max", "min", "negate", "reverse", "sort"};

}  // namespace

bool is_outsrc_function(const std::string& name) {
  return std::find(kOutsrcNames.begin(), kOutsrcNames.end(), name) != kOutsrcNames.end();
}

std::vector<std::string> outsrc_function_names() { return kOutsrcNames; }

std::vector<std::int64_t> apply_outsrc_function(const std::string& name,
                                                const std::vector<std::int64_t>& x) {
  if (name == "identity") return x;
  if (name == "sum")
    return {std::accumulate(x.begin(), x.end(), std::int64_t{0})};
  if (name == "product")
    return {std::accumulate(x.begin(), x.end(), std::int64_t{1},
                            [](std::int64_t a, std::int64_t b) { return a * b; })};
  if (name == "max")
    return {x.empty() ? 0 : *std::max_element(x.begin(), x.end())};
  if (name == "min")
    return {x.empty() ? 0 : *std::min_element(x.begin(), x.end())};
  if (name == "negate") {
    std::vector<std::int64_t> out(x);
    for (auto& v : out) v = -v;
    return out;
  }
  if (name == "reverse") {
    std::vector<std::int64_t> out(x.rbegin(), x.rend());
    return out;
  }
  if (name == "sort") {
    std::vector<std::int64_t> out(x);
    std::sort(out.begin(), out.end());
    return out;
  }
  throw std::invalid_argument("unknown outsourcing function: " + name);
}

bool is_angle_function(const std::string& name) {
  return name == "angles" || name == "zero" || name == "ramp";
}

std::vector<Angle> apply_angle_function(const std::string& name,
                                        const std::vector<std::int64_t>& x,
                                        std::size_t qubit_count) {
  std::vector<Angle> out;
  if (name == "angles") {
    if (x.size() != qubit_count)
      throw std::invalid_argument("angle list length must equal the qubit count");
    for (auto v : x) out.push_back(Angle::from_index(static_cast<int>(v & 7)));
    return out;
  }
  if (name == "zero") {
    out.assign(qubit_count, Angle{});
    return out;
  }
  if (name == "ramp") {
    if (x.size() != 2) throw std::invalid_argument("ramp takes (start, step)");
    for (std::size_t i = 0; i < qubit_count; ++i)
      out.push_back(Angle::from_index(
          static_cast<int>((x[0] + static_cast<std::int64_t>(i) * x[1]) & 7)));
    return out;
  }
  throw std::invalid_argument("unknown angle function: " + name);
}

Bytes encode_keyex_input(std::uint64_t g_a) {
  Bytes out{0x01};
  append_u64(out, g_a);
  return out;
}

Bytes encode_compute_input(const Bytes& ct) {
  Bytes out{0x02};
  append_u32(out, static_cast<std::uint32_t>(ct.size()));
  out.insert(out.end(), ct.begin(), ct.end());
  return out;
}

namespace {

// mem layout: [have_sk u8][sk][next_nonce u64][b u64][seen u32][digest32...]
struct ProgMemory {
  bool have_sk = false;
  Bytes sk;
  std::uint64_t next_nonce = 1;  // enclave nonces are odd
  std::uint64_t b = 0;
  std::vector<Bytes> seen;

  static ProgMemory parse(const Bytes& mem, std::size_t key_size) {
    ProgMemory m;
    if (mem.empty()) return m;
    std::size_t off = 0;
    m.have_sk = mem.at(off++) != 0;
    m.sk.assign(mem.begin() + static_cast<std::ptrdiff_t>(off),
                mem.begin() + static_cast<std::ptrdiff_t>(off + key_size));
    off += key_size;
    m.next_nonce = read_u64(mem, off);
    m.b = read_u64(mem, off);
    const std::uint32_t n = read_u32(mem, off);
    for (std::uint32_t i = 0; i < n; ++i) {
      m.seen.emplace_back(mem.begin() + static_cast<std::ptrdiff_t>(off),
                          mem.begin() + static_cast<std::ptrdiff_t>(off + 32));
      off += 32;
    }
    return m;
  }

  Bytes serialize() const {
    Bytes out;
    out.reserve(1 + sk.size() + 20 + 32 * seen.size());
    out.push_back(have_sk ? 1 : 0);
    out.insert(out.end(), sk.begin(), sk.end());
    append_u64(out, next_nonce);
    append_u64(out, b);
    append_u32(out, static_cast<std::uint32_t>(seen.size()));
    for (const auto& d : seen) out.insert(out.end(), d.begin(), d.end());
    return out;
  }
};

struct ComputeContext {
  ProgMemory mem;
  Bytes plaintext;
};

// Shared keyex/compute plumbing for both programs. Randomness for the
// exponent b is derived from the enclave's memory-free state: the caller
// passes a per-program Prng.
Bytes handle_keyex(const CryptoSuite& suite, Prng& rng, const Bytes& input,
                   std::size_t off, ProgMemory& mem) {
  const std::uint64_t g_a = read_u64(input, off);
  const std::uint64_t b = suite.group.random_exponent(rng);
  const std::uint64_t g_b = suite.group.power(suite.group.generator, b);
  mem.have_sk = true;
  mem.b = b;
  mem.sk = derive_key(suite.group, suite.group.power(g_a, b), suite.ae->key_size());
  Bytes out;
  append_u64(out, g_a);
  append_u64(out, g_b);
  return out;
}

ComputeContext handle_compute(const CryptoSuite& suite, const Bytes& input,
                              std::size_t off, const Bytes& mem_bytes) {
  ProgMemory mem = ProgMemory::parse(mem_bytes, suite.ae->key_size());
  if (!mem.have_sk)
    throw EnclaveAbort("order-abort", "compute before key exchange");
  const std::uint32_t ct_len = read_u32(input, off);
  if (off + ct_len > input.size())
    throw EnclaveAbort("decryption-abort", "truncated ciphertext");
  const Bytes ct(input.begin() + static_cast<std::ptrdiff_t>(off),
                 input.begin() + static_cast<std::ptrdiff_t>(off + ct_len));

  auto plaintext = suite.ae->decrypt(mem.sk, ct);
  if (!plaintext)
    throw EnclaveAbort("decryption-abort", "ciphertext failed authentication");
  const Bytes digest = sha256(ct);
  if (std::find(mem.seen.begin(), mem.seen.end(), digest) != mem.seen.end())
    throw EnclaveAbort("replay-abort", "ciphertext was seen before");
  mem.seen.push_back(digest);
  return {std::move(mem), std::move(*plaintext)};
}

}  // namespace

Bytes ProgRsr::resume(const Bytes& input, Bytes& mem) {
  if (input.empty()) throw EnclaveAbort("decryption-abort", "empty input");
  std::size_t off = 0;
  const std::uint8_t tag = input[off++];
  if (tag == 0x01) {
    ProgMemory m = ProgMemory::parse(mem, suite_.ae->key_size());
    const Bytes out = handle_keyex(suite_, rng_, input, off, m);
    mem = m.serialize();
    return out;
  }
  if (tag != 0x02) throw EnclaveAbort("decryption-abort", "unknown input tag");

  auto [m, plaintext] = handle_compute(suite_, input, off, mem);
  auto [name, x] = decode_function_call(plaintext);
  if (!is_angle_function(name))
    throw EnclaveAbort("unknown-function-abort", "function is not registered: " + name);
  const std::vector<Angle> angles = apply_angle_function(name, x, port_.qubits.size());
  last_angles_ = angles;

  // The rotations are applied to whatever the external source delivered;
  // the source may be adversarial and possibly entangled.
  for (std::size_t i = 0; i < angles.size(); ++i)
    port_.reg->apply_gate("enclave", port_.qubits[i], gates::z_rotation(angles[i]), 0);

  std::vector<std::int64_t> ks;
  ks.reserve(angles.size());
  for (const Angle a : angles) ks.push_back(a.index());
  const Bytes ct_out = suite_.ae->encrypt(m.sk, m.next_nonce, encode_i64_list(ks));
  m.next_nonce += 2;
  mem = m.serialize();
  return ct_out;
}

Bytes ProgOutsrc::resume(const Bytes& input, Bytes& mem) {
  if (input.empty()) throw EnclaveAbort("decryption-abort", "empty input");
  std::size_t off = 0;
  const std::uint8_t tag = input[off++];
  if (tag == 0x01) {
    ProgMemory m = ProgMemory::parse(mem, suite_.ae->key_size());
    const Bytes out = handle_keyex(suite_, rng_, input, off, m);
    mem = m.serialize();
    return out;
  }
  if (tag != 0x02) throw EnclaveAbort("decryption-abort", "unknown input tag");

  auto [m, plaintext] = handle_compute(suite_, input, off, mem);
  auto [name, x] = decode_function_call(plaintext);
  if (!is_outsrc_function(name))
    throw EnclaveAbort("unknown-function-abort", "function is not registered: " + name);
  const std::vector<std::int64_t> y = apply_outsrc_function(name, x);
  const Bytes ct_out = suite_.ae->encrypt(m.sk, m.next_nonce, encode_i64_list(y));
  m.next_nonce += 2;
  mem = m.serialize();
  return ct_out;
}

}  // namespace qesim::enclave
