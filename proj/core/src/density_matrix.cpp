#include "qesim/density_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "qesim/gates.hpp"

namespace qesim {

namespace {

std::size_t log2_exact(std::size_t d) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  if ((std::size_t{1} << n) != d)
    throw std::invalid_argument("dimension is not a power of two");
  return n;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("density matrix must be square");
  n_ = log2_exact(m_.rows());
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  DensityMatrix d;
  d.n_ = psi.qubit_count();
  d.m_ = psi.outer_product();
  return d;
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t qubits) {
  const std::size_t dim = std::size_t{1} << qubits;
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= cplx{1.0 / static_cast<double>(dim), 0.0};
  return DensityMatrix(std::move(m));
}

bool DensityMatrix::is_valid(double tol) const {
  if (!m_.is_hermitian(tol)) return false;
  if (std::abs(m_.trace() - cplx{1.0, 0.0}) > tol) return false;
  const auto eigs = hermitian_eigenvalues(m_);
  return eigs.empty() || eigs.front() >= -tol;
}

void DensityMatrix::validate(double tol) const {
  if (!m_.is_hermitian(tol))
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(m_.trace() - cplx{1.0, 0.0}) > tol)
    throw std::invalid_argument("density matrix trace is not one");
  const auto eigs = hermitian_eigenvalues(m_);
  if (!eigs.empty() && eigs.front() < -tol)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

void DensityMatrix::apply(const ComplexMatrix& u, std::span<const std::size_t> targets) {
  const std::size_t k = targets.size();
  if (u.rows() != u.cols() || u.rows() != (std::size_t{1} << k))
    throw std::invalid_argument("gate arity does not match target count");
  std::vector<std::size_t> shifts(k);
  std::size_t mask = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (targets[i] >= n_) throw std::out_of_range("invalid target qubit");
    shifts[i] = n_ - 1 - targets[i];
    if (mask & (std::size_t{1} << shifts[i]))
      throw std::invalid_argument("duplicate target qubit");
    mask |= std::size_t{1} << shifts[i];
  }
  const std::size_t dim = m_.rows();
  const std::size_t subdim = std::size_t{1} << k;

  auto embed = [&](std::size_t base, std::size_t g) {
    std::size_t idx = base;
    for (std::size_t i = 0; i < k; ++i)
      if (g & (std::size_t{1} << (k - 1 - i))) idx |= std::size_t{1} << shifts[i];
    return idx;
  };

  std::vector<cplx> scratch(subdim);
  // Left-multiply by U (acts on row index), column by column.
  for (std::size_t col = 0; col < dim; ++col) {
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & mask) continue;
      for (std::size_t g = 0; g < subdim; ++g) scratch[g] = m_.at(embed(base, g), col);
      for (std::size_t g = 0; g < subdim; ++g) {
        cplx acc = 0.0;
        for (std::size_t h = 0; h < subdim; ++h) acc += u.at(g, h) * scratch[h];
        m_.at(embed(base, g), col) = acc;
      }
    }
  }
  // Right-multiply by U^dagger (acts on column index), row by row.
  for (std::size_t row = 0; row < dim; ++row) {
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & mask) continue;
      for (std::size_t g = 0; g < subdim; ++g) scratch[g] = m_.at(row, embed(base, g));
      for (std::size_t g = 0; g < subdim; ++g) {
        cplx acc = 0.0;
        for (std::size_t h = 0; h < subdim; ++h)
          acc += scratch[h] * std::conj(u.at(g, h));
        m_.at(row, embed(base, g)) = acc;
      }
    }
  }
}

void DensityMatrix::apply(const ComplexMatrix& u, std::size_t target) {
  const std::size_t t[1] = {target};
  apply(u, t);
}

void DensityMatrix::apply(const ComplexMatrix& u, std::size_t t0, std::size_t t1) {
  const std::size_t t[2] = {t0, t1};
  apply(u, t);
}

void DensityMatrix::tensor_with(const DensityMatrix& other) {
  m_ = kron(m_, other.m_);
  n_ += other.n_;
}

namespace {
std::pair<cplx, cplx> basis_coeffs(Angle delta, int outcome) {
  const double s = 1.0 / std::sqrt(2.0);
  cplx b1 = s * std::polar(1.0, delta.radians());
  if (outcome == 1) b1 = -b1;
  return {cplx{s, 0.0}, b1};
}
}  // namespace

double DensityMatrix::outcome_probability(std::size_t qubit, Angle delta,
                                          int outcome) const {
  if (qubit >= n_) throw std::out_of_range("invalid qubit index");
  const auto [b0, b1] = basis_coeffs(delta, outcome);
  const std::size_t s = n_ - 1 - qubit;
  const std::size_t low_mask = (std::size_t{1} << s) - 1;
  const std::size_t half = m_.rows() >> 1;
  // p = <b| Tr_rest[ rho restricted to qubit ] |b> accumulated inline.
  double p = 0.0;
  for (std::size_t j = 0; j < half; ++j) {
    const std::size_t high = (j & ~low_mask) << 1;
    const std::size_t low = j & low_mask;
    const std::size_t i0 = high | low;
    const std::size_t i1 = high | (std::size_t{1} << s) | low;
    p += std::real(std::conj(b0) * b0 * m_.at(i0, i0) +
                   std::conj(b0) * b1 * m_.at(i0, i1) +
                   std::conj(b1) * b0 * m_.at(i1, i0) +
                   std::conj(b1) * b1 * m_.at(i1, i1));
  }
  return p;
}

double DensityMatrix::project_and_remove(std::size_t qubit, Angle delta, int outcome) {
  if (qubit >= n_) throw std::out_of_range("invalid qubit index");
  const auto [b0, b1] = basis_coeffs(delta, outcome);
  const std::size_t s = n_ - 1 - qubit;
  const std::size_t low_mask = (std::size_t{1} << s) - 1;
  const std::size_t half = m_.rows() >> 1;
  ComplexMatrix out(half, half);
  double p = 0.0;
  auto expand = [&](std::size_t j, std::size_t bit) {
    const std::size_t high = (j & ~low_mask) << 1;
    const std::size_t low = j & low_mask;
    return high | (bit << s) | low;
  };
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t j = 0; j < half; ++j) {
      // <b|_q rho |b>_q entry for the remaining system.
      cplx v = std::conj(b0) * b0 * m_.at(expand(i, 0), expand(j, 0)) +
               std::conj(b0) * b1 * m_.at(expand(i, 0), expand(j, 1)) +
               std::conj(b1) * b0 * m_.at(expand(i, 1), expand(j, 0)) +
               std::conj(b1) * b1 * m_.at(expand(i, 1), expand(j, 1));
      out.at(i, j) = v;
      if (i == j) p += std::real(v);
    }
  }
  if (p < 1e-300) throw std::runtime_error("projection onto zero-probability outcome");
  out *= cplx{1.0 / p, 0.0};
  m_ = std::move(out);
  n_ -= 1;
  return p;
}

double DensityMatrix::outcome_probability_z(std::size_t qubit, int outcome) const {
  if (qubit >= n_) throw std::out_of_range("invalid qubit index");
  const std::size_t s = n_ - 1 - qubit;
  double p = 0.0;
  for (std::size_t i = 0; i < m_.rows(); ++i)
    if (((i >> s) & 1) == static_cast<std::size_t>(outcome)) p += std::real(m_.at(i, i));
  return p;
}

double DensityMatrix::project_and_remove_z(std::size_t qubit, int outcome) {
  if (qubit >= n_) throw std::out_of_range("invalid qubit index");
  const std::size_t s = n_ - 1 - qubit;
  const std::size_t low_mask = (std::size_t{1} << s) - 1;
  const std::size_t half = m_.rows() >> 1;
  const std::size_t bit = static_cast<std::size_t>(outcome);
  ComplexMatrix out(half, half);
  double p = 0.0;
  auto expand = [&](std::size_t j) {
    const std::size_t high = (j & ~low_mask) << 1;
    const std::size_t low = j & low_mask;
    return high | (bit << s) | low;
  };
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = 0; j < half; ++j) {
      out.at(i, j) = m_.at(expand(i), expand(j));
      if (i == j) p += std::real(out.at(i, j));
    }
  if (p < 1e-300) throw std::runtime_error("projection onto zero-probability outcome");
  out *= cplx{1.0 / p, 0.0};
  m_ = std::move(out);
  n_ -= 1;
  return p;
}

DensityMatrix DensityMatrix::partial_trace_keep(std::span<const std::size_t> keep) const {
  for (std::size_t q : keep)
    if (q >= n_) throw std::out_of_range("invalid subsystem index");
  std::vector<bool> kept(n_, false);
  for (std::size_t q : keep) {
    if (kept[q]) throw std::invalid_argument("duplicate subsystem index");
    kept[q] = true;
  }
  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < n_; ++q)
    if (!kept[q]) traced.push_back(q);

  const std::size_t nk = keep.size();
  const std::size_t nt = traced.size();
  // Compose a full index from a kept-part index and a traced-part index.
  auto full_index = [&](std::size_t ik, std::size_t it) {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < nk; ++a)
      if (ik & (std::size_t{1} << (nk - 1 - a)))
        idx |= std::size_t{1} << (n_ - 1 - keep[a]);
    for (std::size_t a = 0; a < nt; ++a)
      if (it & (std::size_t{1} << (nt - 1 - a)))
        idx |= std::size_t{1} << (n_ - 1 - traced[a]);
    return idx;
  };

  const std::size_t kd = std::size_t{1} << nk;
  const std::size_t td = std::size_t{1} << nt;
  ComplexMatrix out(kd, kd);
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < kd; ++j) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < td; ++t)
        acc += m_.at(full_index(i, t), full_index(j, t));
      out.at(i, j) = acc;
    }
  DensityMatrix d;
  d.n_ = nk;
  d.m_ = std::move(out);
  return d;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  return 0.5 * trace_norm_hermitian(a.matrix() - b.matrix());
}

double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      acc += std::conj(psi.amplitude(i)) * rho.matrix().at(i, j) * psi.amplitude(j);
  return std::real(acc);
}

ComplexMatrix z_rotate_block_matrix(Angle theta, const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() % 2 != 0)
    throw std::invalid_argument("dimension is not a multiple of two");
  const std::size_t half = rho.rows() / 2;
  const cplx phase = std::polar(1.0, theta.radians());
  ComplexMatrix out = rho;
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = 0; j < half; ++j) {
      out.at(i, half + j) *= std::conj(phase);
      out.at(half + i, j) *= phase;
    }
  return out;
}

DensityMatrix z_rotate_density(Angle theta, const DensityMatrix& rho) {
  return DensityMatrix(z_rotate_block_matrix(theta, rho.matrix()));
}

}  // namespace qesim
