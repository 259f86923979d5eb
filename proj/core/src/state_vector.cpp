#include "qesim/state_vector.hpp"

#include <cmath>
#include <stdexcept>

#include "qesim/gates.hpp"

namespace qesim {

StateVector::StateVector(std::size_t qubits)
    : n_(qubits), amps_(std::size_t{1} << qubits) {
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t qubits, std::vector<cplx> amplitudes)
    : n_(qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << qubits))
    throw std::invalid_argument("StateVector: amplitude count mismatch");
}

StateVector StateVector::plus_state(Angle theta) {
  const double s = 1.0 / std::sqrt(2.0);
  return StateVector(1, {s, s * std::polar(1.0, theta.radians())});
}

StateVector StateVector::computational(std::size_t qubits, std::size_t basis_index) {
  StateVector v(qubits);
  v.amps_[0] = 0.0;
  v.amps_.at(basis_index) = 1.0;
  return v;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (n <= 0.0) throw std::runtime_error("cannot normalize zero vector");
  for (auto& a : amps_) a /= n;
}

void StateVector::apply(const ComplexMatrix& u, std::span<const std::size_t> targets) {
  const std::size_t k = targets.size();
  if (u.rows() != u.cols() || u.rows() != (std::size_t{1} << k))
    throw std::invalid_argument("gate arity does not match target count");
  std::vector<std::size_t> shifts(k);
  std::size_t targets_mask = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (targets[i] >= n_) throw std::out_of_range("invalid target qubit");
    shifts[i] = bit_shift(targets[i]);
    if (targets_mask & (std::size_t{1} << shifts[i]))
      throw std::invalid_argument("duplicate target qubit");
    targets_mask |= std::size_t{1} << shifts[i];
  }

  const std::size_t subdim = std::size_t{1} << k;
  std::vector<cplx> scratch(subdim);
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & targets_mask) continue;
    for (std::size_t g = 0; g < subdim; ++g) {
      std::size_t idx = base;
      for (std::size_t i = 0; i < k; ++i)
        if (g & (std::size_t{1} << (k - 1 - i))) idx |= std::size_t{1} << shifts[i];
      scratch[g] = amps_[idx];
    }
    for (std::size_t g = 0; g < subdim; ++g) {
      cplx acc = 0.0;
      for (std::size_t h = 0; h < subdim; ++h) acc += u.at(g, h) * scratch[h];
      std::size_t idx = base;
      for (std::size_t i = 0; i < k; ++i)
        if (g & (std::size_t{1} << (k - 1 - i))) idx |= std::size_t{1} << shifts[i];
      amps_[idx] = acc;
    }
  }
}

void StateVector::apply(const ComplexMatrix& u, std::size_t target) {
  const std::size_t t[1] = {target};
  apply(u, t);
}

void StateVector::apply(const ComplexMatrix& u, std::size_t t0, std::size_t t1) {
  const std::size_t t[2] = {t0, t1};
  apply(u, t);
}

void StateVector::tensor_with(const StateVector& other) {
  std::vector<cplx> out(amps_.size() * other.amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (amps_[i] == cplx{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < other.amps_.size(); ++j)
      out[(i << other.n_) | j] = amps_[i] * other.amps_[j];
  }
  n_ += other.n_;
  amps_ = std::move(out);
}

namespace {
// Basis coefficients of |+_delta> (outcome 0) / |-_delta> (outcome 1).
std::pair<cplx, cplx> basis_coeffs(Angle delta, int outcome) {
  const double s = 1.0 / std::sqrt(2.0);
  cplx b1 = s * std::polar(1.0, delta.radians());
  if (outcome == 1) b1 = -b1;
  return {cplx{s, 0.0}, b1};
}
}  // namespace

double StateVector::outcome_probability(std::size_t qubit, Angle delta,
                                        int outcome) const {
  if (qubit >= n_) throw std::out_of_range("invalid qubit index");
  const auto [b0, b1] = basis_coeffs(delta, outcome);
  const std::size_t s = bit_shift(qubit);
  const std::size_t low_mask = (std::size_t{1} << s) - 1;
  double p = 0.0;
  for (std::size_t j = 0; j < (amps_.size() >> 1); ++j) {
    const std::size_t high = (j & ~low_mask) << 1;
    const std::size_t low = j & low_mask;
    const cplx overlap = std::conj(b0) * amps_[high | low] +
                         std::conj(b1) * amps_[high | (std::size_t{1} << s) | low];
    p += std::norm(overlap);
  }
  return p;
}

double StateVector::project_and_remove(std::size_t qubit, Angle delta, int outcome) {
  if (qubit >= n_) throw std::out_of_range("invalid qubit index");
  const auto [b0, b1] = basis_coeffs(delta, outcome);
  const std::size_t s = bit_shift(qubit);
  const std::size_t low_mask = (std::size_t{1} << s) - 1;
  std::vector<cplx> out(amps_.size() >> 1);
  double p = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t high = (j & ~low_mask) << 1;
    const std::size_t low = j & low_mask;
    out[j] = std::conj(b0) * amps_[high | low] +
             std::conj(b1) * amps_[high | (std::size_t{1} << s) | low];
    p += std::norm(out[j]);
  }
  if (p < 1e-300) throw std::runtime_error("projection onto zero-probability outcome");
  const double inv = 1.0 / std::sqrt(p);
  for (auto& a : out) a *= inv;
  amps_ = std::move(out);
  n_ -= 1;
  return p;
}

double StateVector::project_and_remove_z(std::size_t qubit, int outcome) {
  if (qubit >= n_) throw std::out_of_range("invalid qubit index");
  const std::size_t s = bit_shift(qubit);
  const std::size_t low_mask = (std::size_t{1} << s) - 1;
  std::vector<cplx> out(amps_.size() >> 1);
  double p = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t high = (j & ~low_mask) << 1;
    const std::size_t low = j & low_mask;
    const std::size_t bit = outcome ? (std::size_t{1} << s) : 0;
    out[j] = amps_[high | bit | low];
    p += std::norm(out[j]);
  }
  if (p < 1e-300) throw std::runtime_error("projection onto zero-probability outcome");
  const double inv = 1.0 / std::sqrt(p);
  for (auto& a : out) a *= inv;
  amps_ = std::move(out);
  n_ -= 1;
  return p;
}

ComplexMatrix StateVector::outer_product() const {
  ComplexMatrix m(amps_.size(), amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (amps_[i] == cplx{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < amps_.size(); ++j)
      m.at(i, j) = amps_[i] * std::conj(amps_[j]);
  }
  return m;
}

}  // namespace qesim
