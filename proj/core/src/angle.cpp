#include "qesim/angle.hpp"

#include <numbers>

#include "qesim/prng.hpp"

namespace qesim {

Angle Angle::uniform(Prng& rng) {
  return from_index(static_cast<int>(rng.uniform_below(8)));
}

double Angle::radians() const {
  return static_cast<double>(k_) * std::numbers::pi / 4.0;
}

std::string Angle::str() const { return std::to_string(k_) + "pi/4"; }

}  // namespace qesim
