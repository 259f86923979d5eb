#include "qesim/quantum_register.hpp"

#include <algorithm>
#include <stdexcept>

namespace qesim {

QuantumRegister::QuantumRegister(std::size_t max_qubits)
    : max_qubits_(max_qubits), state_(StateVector(0)) {}

QuantumRegister::Handle& QuantumRegister::checked(HandleId h) {
  if (h >= handles_.size() || !handles_[h].alive)
    throw std::invalid_argument("unknown or expired handle");
  return handles_[h];
}

const QuantumRegister::Handle& QuantumRegister::checked(HandleId h) const {
  if (h >= handles_.size() || !handles_[h].alive)
    throw std::invalid_argument("unknown or expired handle");
  return handles_[h];
}

void QuantumRegister::require_holder(std::string_view as, const Handle& h) const {
  if (h.holder != as)
    throw std::invalid_argument("operation requires holding the handle (held by " +
                                h.holder + ")");
}

std::size_t QuantumRegister::position_of(std::uint32_t label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw std::logic_error("stale qubit label");
}

void QuantumRegister::demote_to_density() {
  if (std::holds_alternative<StateVector>(state_))
    state_ = DensityMatrix::pure(std::get<StateVector>(state_));
}

HandleId QuantumRegister::add_pure(const StateVector& psi, std::string holder) {
  if (labels_.size() + psi.qubit_count() > max_qubits_)
    throw std::invalid_argument("register qubit cap exceeded");
  if (std::holds_alternative<StateVector>(state_)) {
    std::get<StateVector>(state_).tensor_with(psi);
  } else {
    std::get<DensityMatrix>(state_).tensor_with(DensityMatrix::pure(psi));
  }
  Handle h;
  h.holder = std::move(holder);
  for (std::size_t i = 0; i < psi.qubit_count(); ++i) {
    labels_.push_back(next_label_);
    h.labels.push_back(next_label_);
    ++next_label_;
  }
  handles_.push_back(std::move(h));
  return handles_.size() - 1;
}

HandleId QuantumRegister::add_mixed(const DensityMatrix& rho, std::string holder) {
  if (labels_.size() + rho.qubit_count() > max_qubits_)
    throw std::invalid_argument("register qubit cap exceeded");
  demote_to_density();
  std::get<DensityMatrix>(state_).tensor_with(rho);
  Handle h;
  h.holder = std::move(holder);
  for (std::size_t i = 0; i < rho.qubit_count(); ++i) {
    labels_.push_back(next_label_);
    h.labels.push_back(next_label_);
    ++next_label_;
  }
  handles_.push_back(std::move(h));
  return handles_.size() - 1;
}

void QuantumRegister::transfer(HandleId h, std::string new_holder) {
  checked(h).holder = std::move(new_holder);
}

HandleId QuantumRegister::split(HandleId h, std::span<const std::size_t> qubits_within) {
  Handle& src = checked(h);
  Handle out;
  out.holder = src.holder;
  std::vector<bool> taken(src.labels.size(), false);
  for (std::size_t q : qubits_within) {
    if (q >= src.labels.size()) throw std::out_of_range("invalid qubit in handle");
    if (taken[q]) throw std::invalid_argument("duplicate qubit in split");
    taken[q] = true;
    out.labels.push_back(src.labels[q]);
  }
  std::vector<std::uint32_t> rest;
  for (std::size_t i = 0; i < src.labels.size(); ++i)
    if (!taken[i]) rest.push_back(src.labels[i]);
  src.labels = std::move(rest);
  src.alive = !src.labels.empty();
  handles_.push_back(std::move(out));
  return handles_.size() - 1;
}

void QuantumRegister::merge(HandleId dst, HandleId src) {
  Handle& d = checked(dst);
  Handle& s = checked(src);
  if (d.holder != s.holder)
    throw std::invalid_argument("merge requires a common holder");
  d.labels.insert(d.labels.end(), s.labels.begin(), s.labels.end());
  s.labels.clear();
  s.alive = false;
}

const std::string& QuantumRegister::holder(HandleId h) const { return checked(h).holder; }

std::size_t QuantumRegister::handle_qubit_count(HandleId h) const {
  return checked(h).labels.size();
}

bool QuantumRegister::is_pure() const {
  return std::holds_alternative<StateVector>(state_);
}

void QuantumRegister::apply_gate(std::string_view as, HandleId h, const ComplexMatrix& u,
                                 std::span<const std::size_t> targets_within) {
  Handle& hd = checked(h);
  require_holder(as, hd);
  std::vector<std::size_t> positions;
  positions.reserve(targets_within.size());
  for (std::size_t q : targets_within) {
    if (q >= hd.labels.size()) throw std::out_of_range("invalid qubit in handle");
    positions.push_back(position_of(hd.labels[q]));
  }
  if (std::holds_alternative<StateVector>(state_))
    std::get<StateVector>(state_).apply(u, positions);
  else
    std::get<DensityMatrix>(state_).apply(u, positions);
}

void QuantumRegister::apply_gate(std::string_view as, HandleId h, const ComplexMatrix& u,
                                 std::size_t target_within) {
  const std::size_t t[1] = {target_within};
  apply_gate(as, h, u, t);
}

double QuantumRegister::apply_kraus(std::string_view as, HandleId h,
                                    const ComplexMatrix& m,
                                    std::span<const std::size_t> targets_within) {
  Handle& hd = checked(h);
  require_holder(as, hd);
  std::vector<std::size_t> positions;
  positions.reserve(targets_within.size());
  for (std::size_t q : targets_within) {
    if (q >= hd.labels.size()) throw std::out_of_range("invalid qubit in handle");
    positions.push_back(position_of(hd.labels[q]));
  }
  if (std::holds_alternative<StateVector>(state_)) {
    auto& sv = std::get<StateVector>(state_);
    sv.apply(m, positions);
    const double n = sv.norm();
    const double p = n * n;
    if (p < 1e-300) throw std::runtime_error("selection has zero probability");
    sv.normalize();
    return p;
  }
  auto& dm = std::get<DensityMatrix>(state_);
  dm.apply(m, positions);
  const double p = std::real(dm.matrix().trace());
  if (p < 1e-300) throw std::runtime_error("selection has zero probability");
  dm.matrix() *= cplx{1.0 / p, 0.0};
  return p;
}

QuantumRegister::MeasureOutcome QuantumRegister::do_measure(
    HandleId h, std::size_t qubit_within, std::optional<Angle> delta,
    std::optional<int> forced, Prng* rng) {
  Handle& hd = handles_[h];
  const std::size_t pos = position_of(hd.labels[qubit_within]);

  double p0;
  if (std::holds_alternative<StateVector>(state_)) {
    const auto& sv = std::get<StateVector>(state_);
    if (delta) {
      p0 = sv.outcome_probability(pos, *delta, 0);
    } else {
      p0 = 0.0;
      for (std::size_t i = 0; i < sv.dim(); ++i)
        if (((i >> (sv.qubit_count() - 1 - pos)) & 1) == 0)
          p0 += std::norm(sv.amplitude(i));
    }
  } else {
    const auto& dm = std::get<DensityMatrix>(state_);
    p0 = delta ? dm.outcome_probability(pos, *delta, 0) : dm.outcome_probability_z(pos, 0);
  }

  int outcome;
  if (forced) {
    outcome = *forced;
  } else {
    outcome = (rng->uniform01() < p0) ? 0 : 1;
  }

  double p;
  if (std::holds_alternative<StateVector>(state_)) {
    auto& sv = std::get<StateVector>(state_);
    p = delta ? sv.project_and_remove(pos, *delta, outcome)
              : sv.project_and_remove_z(pos, outcome);
  } else {
    auto& dm = std::get<DensityMatrix>(state_);
    p = delta ? dm.project_and_remove(pos, *delta, outcome)
              : dm.project_and_remove_z(pos, outcome);
  }

  labels_.erase(labels_.begin() + static_cast<std::ptrdiff_t>(pos));
  hd.labels.erase(hd.labels.begin() + static_cast<std::ptrdiff_t>(qubit_within));
  if (hd.labels.empty()) hd.alive = false;
  return {outcome, p};
}

QuantumRegister::MeasureOutcome QuantumRegister::measure(std::string_view as, HandleId h,
                                                         std::size_t qubit_within,
                                                         Angle delta, Prng& rng) {
  Handle& hd = checked(h);
  require_holder(as, hd);
  if (qubit_within >= hd.labels.size()) throw std::out_of_range("invalid qubit in handle");
  return do_measure(h, qubit_within, delta, std::nullopt, &rng);
}

QuantumRegister::MeasureOutcome QuantumRegister::measure_forced(
    std::string_view as, HandleId h, std::size_t qubit_within, Angle delta, int outcome) {
  Handle& hd = checked(h);
  require_holder(as, hd);
  if (qubit_within >= hd.labels.size()) throw std::out_of_range("invalid qubit in handle");
  return do_measure(h, qubit_within, delta, outcome, nullptr);
}

QuantumRegister::MeasureOutcome QuantumRegister::measure_z(std::string_view as, HandleId h,
                                                           std::size_t qubit_within,
                                                           Prng& rng) {
  Handle& hd = checked(h);
  require_holder(as, hd);
  if (qubit_within >= hd.labels.size()) throw std::out_of_range("invalid qubit in handle");
  return do_measure(h, qubit_within, std::nullopt, std::nullopt, &rng);
}

QuantumRegister::MeasureOutcome QuantumRegister::measure_z_forced(
    std::string_view as, HandleId h, std::size_t qubit_within, int outcome) {
  Handle& hd = checked(h);
  require_holder(as, hd);
  if (qubit_within >= hd.labels.size()) throw std::out_of_range("invalid qubit in handle");
  return do_measure(h, qubit_within, std::nullopt, outcome, nullptr);
}

DensityMatrix QuantumRegister::reduced_state(HandleId h) const {
  const Handle& hd = checked(h);
  std::vector<std::size_t> keep;
  keep.reserve(hd.labels.size());
  for (auto label : hd.labels) keep.push_back(position_of(label));
  return full_density().partial_trace_keep(keep);
}

DensityMatrix QuantumRegister::full_density() const {
  if (std::holds_alternative<StateVector>(state_))
    return DensityMatrix::pure(std::get<StateVector>(state_));
  return std::get<DensityMatrix>(state_);
}

}  // namespace qesim
