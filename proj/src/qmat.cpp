#include "qgess/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qgess {

namespace {

bool is_composite_dim(int dim) { return dim == 4 || dim == 8 || dim == 9; }

bool is_unitary_dim(int dim) {
  return dim == 2 || dim == 3 || is_composite_dim(dim);
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
}

}  // namespace

double max_abs(const CMatrix& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) out = std::max(out, std::abs(m(i)));
  return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (!is_composite_dim(dim())) {
    throw std::invalid_argument("StateVector: dimension must be 4, 8 or 9, got " +
                                std::to_string(dim()));
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kInvariantTol) {
    throw std::invalid_argument("StateVector: amplitudes not normalized (sum |c|^2 = " +
                                std::to_string(norm2) + ")");
  }
}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw std::out_of_range("StateVector::basis: index");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
  require_square(rho_, "DensityMatrix");
  if (!is_composite_dim(dim())) {
    throw std::invalid_argument("DensityMatrix: dimension must be 4, 8 or 9");
  }
  const DensityDiagnostics d = validate_density(rho_);
  if (d.hermiticity_defect >= kInvariantTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (d.trace_defect >= kInvariantTol) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  if (d.min_eigenvalue < kPsdTol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(d.min_eigenvalue));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const CVector& v = psi.amplitudes();
  return DensityMatrix(CMatrix(v * v.adjoint()), Trusted{});
}

double DensityMatrix::expectation_diagonal(std::span<const double> weights) const {
  if (static_cast<int>(weights.size()) != dim()) {
    throw std::invalid_argument("expectation_diagonal: weight count does not match dimension");
  }
  double out = 0.0;
  for (int i = 0; i < dim(); ++i) out += weights[i] * population(i);
  return out;
}

// ---------------------------------------------------------------------------

UnitaryMatrix::UnitaryMatrix(CMatrix u) : u_(std::move(u)) {
  require_square(u_, "UnitaryMatrix");
  if (!is_unitary_dim(dim())) {
    throw std::invalid_argument("UnitaryMatrix: unsupported dimension " + std::to_string(dim()));
  }
  const CMatrix defect = u_.adjoint() * u_ - CMatrix::Identity(dim(), dim());
  if (max_abs(defect) >= kInvariantTol) {
    throw std::invalid_argument("UnitaryMatrix: U^dag U differs from identity");
  }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  return UnitaryMatrix(CMatrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(CMatrix(u_.adjoint()), Trusted{});
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("UnitaryMatrix product: dim mismatch");
  return UnitaryMatrix(CMatrix(a.u_ * b.u_), UnitaryMatrix::Trusted{});
}

// ---------------------------------------------------------------------------

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) {
    throw std::length_error("tensor: result exceeds 9x9");
  }
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  const Eigen::Index n = a.size() * b.size();
  if (n > kMaxDim) throw std::length_error("tensor: result exceeds 9 components");
  CVector out(n);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return UnitaryMatrix(tensor(a.matrix(), b.matrix()), UnitaryMatrix::Trusted{});
}

StateVector apply(const UnitaryMatrix& u, const StateVector& psi) {
  if (u.dim() != psi.dim()) throw std::invalid_argument("apply: dim mismatch");
  return StateVector(CVector(u.matrix() * psi.amplitudes()), StateVector::Trusted{});
}

DensityMatrix evolve_density(const DensityMatrix& rho, const UnitaryMatrix& u) {
  if (u.dim() != rho.dim()) throw std::invalid_argument("evolve_density: dim mismatch");
  const CMatrix& m = u.matrix();
  return DensityMatrix(CMatrix(m * rho.matrix() * m.adjoint()), DensityMatrix::Trusted{});
}

DensityMatrix convex_mixture(std::span<const double> weights,
                             std::span<const DensityMatrix> terms) {
  if (weights.size() != terms.size() || terms.empty()) {
    throw std::invalid_argument("convex_mixture: need one weight per term");
  }
  const int dim = terms.front().dim();
  double total = 0.0;
  CMatrix acc = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    // Tiny negative weights come from 1 - p - p1 rounding.
    if (weights[k] < -kInvariantTol) {
      throw std::invalid_argument("convex_mixture: negative weight");
    }
    if (terms[k].dim() != dim) throw std::invalid_argument("convex_mixture: dim mismatch");
    total += weights[k];
    if (weights[k] != 0.0) acc += weights[k] * terms[k].matrix();
  }
  if (std::abs(total - 1.0) > kInvariantTol) {
    throw std::invalid_argument("convex_mixture: weights do not sum to 1");
  }
  return DensityMatrix(std::move(acc), DensityMatrix::Trusted{});
}

DensityDiagnostics validate_density(const CMatrix& rho) {
  require_square(rho, "validate_density");
  DensityDiagnostics d;
  d.hermiticity_defect = max_abs(rho - rho.adjoint());
  d.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  const Eigen::MatrixXcd hermitian_part = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part,
                                                          Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

}  // namespace qgess
