#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace qesim {

class Prng;

// Rotation angle restricted to the eight multiples of pi/4.
// Stored as the integer index k (theta = k*pi/4); all arithmetic is mod 8,
// which keeps the protocol's angle bookkeeping free of floating-point drift.
class Angle {
 public:
  constexpr Angle() = default;

  static constexpr Angle from_index(int k) {
    Angle a;
    a.k_ = ((k % 8) + 8) % 8;
    return a;
  }

  static Angle uniform(Prng& rng);

  constexpr int index() const { return k_; }
  double radians() const;

  // theta + pi
  constexpr Angle antipode() const { return from_index(k_ + 4); }
  // -theta
  constexpr Angle negated() const { return from_index(8 - k_); }

  constexpr Angle operator+(Angle o) const { return from_index(k_ + o.k_); }
  constexpr Angle operator-(Angle o) const { return from_index(k_ - o.k_); }

  constexpr bool operator==(const Angle&) const = default;

  std::string str() const;  // "k*pi/4"

  static constexpr std::array<int, 8> all_indices() {
    return {0, 1, 2, 3, 4, 5, 6, 7};
  }

 private:
  int k_ = 0;
};

}  // namespace qesim
