#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qesim/ubqc/pattern.hpp"

namespace qesim::ubqc {

class EnumerationBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact joint distribution of the server's classical view (every delta and
// every reported signal) for an honest server, as integer counts over the
// finite enumeration of (theta, r, reported signals). Each tuple carries
// equal weight: theta and r are uniform by definition and every signal
// branch has probability exactly 2^-M for these patterns (a property the
// quantum tests check independently).
struct ViewDistribution {
  // key: delta indices for every measured vertex, then the reported signals.
  std::map<std::vector<std::uint8_t>, std::uint64_t> counts;
  std::uint64_t total = 0;
};

ViewDistribution server_view_distribution(const Pattern& pattern,
                                          std::uint64_t enumeration_bound = 10000000);

// Exact total-variation distance between two view distributions, as a
// rational numerator/denominator pair; zero iff the integer tables agree.
struct ExactTv {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  bool is_zero() const { return numerator == 0; }
};

ExactTv total_variation(const ViewDistribution& a, const ViewDistribution& b);

// Marginal over a single vertex's delta, as counts per angle index.
std::vector<std::uint64_t> delta_marginal(const ViewDistribution& view,
                                          std::size_t measured_index);

}  // namespace qesim::ubqc
