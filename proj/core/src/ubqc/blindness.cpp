#include "qesim/ubqc/blindness.hpp"

#include <numeric>

namespace qesim::ubqc {

ViewDistribution server_view_distribution(const Pattern& pattern,
                                          std::uint64_t enumeration_bound) {
  const std::size_t m = pattern.graph().measured_count();
  // 2^M reported-signal choices x 2^M r choices x 8^M theta choices.
  long double combos = 1.0L;
  for (std::size_t i = 0; i < m; ++i) combos *= 32.0L;
  if (combos > static_cast<long double>(enumeration_bound))
    throw EnumerationBoundExceeded("view enumeration exceeds the configured bound");

  ViewDistribution view;
  const std::size_t signal_count = std::size_t{1} << m;
  std::vector<int> reported(m), recorded(m), r_bits(m);
  std::vector<int> phi_prime(m);
  std::vector<std::uint8_t> key(2 * m);

  for (std::size_t sv = 0; sv < signal_count; ++sv) {
    for (std::size_t i = 0; i < m; ++i)
      reported[i] = static_cast<int>((sv >> (m - 1 - i)) & 1);
    for (std::size_t rv = 0; rv < signal_count; ++rv) {
      for (std::size_t i = 0; i < m; ++i) {
        r_bits[i] = static_cast<int>((rv >> (m - 1 - i)) & 1);
        recorded[i] = reported[i] ^ r_bits[i];
      }
      // Adapted angles depend on (reported, r) only, not on theta.
      for (std::size_t i = 0; i < m; ++i) {
        int s_x = 0, s_z = 0;
        for (std::size_t d : pattern.x_deps(i)) s_x ^= recorded[d];
        for (std::size_t d : pattern.z_deps(i)) s_z ^= recorded[d];
        phi_prime[i] = updated_angle(pattern.phi_at(i), s_x, s_z).index();
      }
      for (std::size_t i = 0; i < m; ++i)
        key[m + i] = static_cast<std::uint8_t>(reported[i]);

      // Odometer over theta assignments.
      std::vector<int> theta(m, 0);
      while (true) {
        for (std::size_t i = 0; i < m; ++i)
          key[i] = static_cast<std::uint8_t>(
              (phi_prime[i] + theta[i] + 4 * r_bits[i]) & 7);
        ++view.counts[key];
        ++view.total;
        std::size_t pos = m;
        while (pos > 0) {
          --pos;
          if (++theta[pos] < 8) break;
          theta[pos] = 0;
          if (pos == 0) goto next_r;
        }
        if (m == 0) break;
      }
    next_r:;
    }
  }
  return view;
}

ExactTv total_variation(const ViewDistribution& a, const ViewDistribution& b) {
  ExactTv tv;
  tv.denominator = 2 * a.total * b.total;
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  std::uint64_t acc = 0;
  while (ia != a.counts.end() || ib != b.counts.end()) {
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      acc += ia->second * b.total;
      ++ia;
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      acc += ib->second * a.total;
      ++ib;
    } else {
      const std::uint64_t x = ia->second * b.total;
      const std::uint64_t y = ib->second * a.total;
      acc += (x > y) ? (x - y) : (y - x);
      ++ia;
      ++ib;
    }
  }
  tv.numerator = acc;
  return tv;
}

std::vector<std::uint64_t> delta_marginal(const ViewDistribution& view,
                                          std::size_t measured_index) {
  std::vector<std::uint64_t> out(8, 0);
  for (const auto& [key, count] : view.counts)
    out[key.at(measured_index)] += count;
  return out;
}

}  // namespace qesim::ubqc
