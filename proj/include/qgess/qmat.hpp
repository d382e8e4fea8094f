#ifndef QGESS_QMAT_HPP
#define QGESS_QMAT_HPP

// Small dense complex linear algebra for the quantization engines.
//
// Every composite system in this library is at most two qutrits or three
// qubits, so storage is capped at 9x9. Composite basis states use row-major
// ordering: |ij> sits at index i*dim_B + j, and |ijk> at (i*dim_B + j)*dim_C + k.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qgess {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 9;

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                              Eigen::ColMajor, kMaxDim, kMaxDim>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor,
                              kMaxDim, 1>;

/// Tolerance on the normalization, Hermiticity and unitarity invariants.
inline constexpr double kInvariantTol = 1e-12;
/// Smallest eigenvalue accepted for a density matrix.
inline constexpr double kPsdTol = -1e-10;

class UnitaryMatrix;

/// Normalized pure state of a composite system (dimension 4, 8 or 9).
class StateVector {
 public:
  explicit StateVector(CVector amplitudes);

  /// Computational basis state |index>.
  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(int index) const { return amplitudes_(index); }
  /// |<index|psi>|^2
  double probability(int index) const { return std::norm(amplitudes_(index)); }

 private:
  struct Trusted {};
  StateVector(CVector amplitudes, Trusted) : amplitudes_(std::move(amplitudes)) {}

  friend StateVector apply(const UnitaryMatrix& u, const StateVector& psi);

  CVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  explicit DensityMatrix(CMatrix rho);

  static DensityMatrix pure(const StateVector& psi);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const CMatrix& matrix() const { return rho_; }
  /// Diagonal element <i|rho|i>, i.e. the probability of measuring |i>.
  double population(int index) const { return rho_(index, index).real(); }
  /// Tr[W rho] for an operator W that is diagonal in the computational basis.
  double expectation_diagonal(std::span<const double> weights) const;

 private:
  struct Trusted {};
  DensityMatrix(CMatrix rho, Trusted) : rho_(std::move(rho)) {}

  friend DensityMatrix evolve_density(const DensityMatrix& rho,
                                      const UnitaryMatrix& u);
  friend DensityMatrix convex_mixture(std::span<const double> weights,
                                      std::span<const DensityMatrix> terms);

  CMatrix rho_;
};

class UnitaryMatrix {
 public:
  /// Validates ||U^dag U - I||_inf < 1e-12. Dimensions 2, 3, 4, 8 and 9.
  explicit UnitaryMatrix(CMatrix u);

  static UnitaryMatrix identity(int dim);

  int dim() const { return static_cast<int>(u_.rows()); }
  const CMatrix& matrix() const { return u_; }
  UnitaryMatrix adjoint() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

 private:
  struct Trusted {};
  UnitaryMatrix(CMatrix u, Trusted) : u_(std::move(u)) {}

  friend UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);

  CMatrix u_;
};

/// Kronecker product. Throws std::length_error when the result would exceed
/// the 9x9 library scope.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);
UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);

StateVector apply(const UnitaryMatrix& u, const StateVector& psi);

/// U rho U^dag
DensityMatrix evolve_density(const DensityMatrix& rho, const UnitaryMatrix& u);

/// sum_k w_k rho_k with w_k >= 0 and sum w_k = 1.
DensityMatrix convex_mixture(std::span<const double> weights,
                             std::span<const DensityMatrix> terms);

struct DensityDiagnostics {
  double hermiticity_defect = 0.0;  // ||rho - rho^dag||_inf
  double trace_defect = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part

  bool valid(double tol = 1e-10) const {
    return hermiticity_defect < tol && trace_defect < tol && min_eigenvalue >= -tol;
  }
};

DensityDiagnostics validate_density(const CMatrix& rho);

/// Largest absolute entry, the norm used for all invariant checks.
double max_abs(const CMatrix& m);

/// Commutator AB - BA.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

}  // namespace qgess

#endif  // QGESS_QMAT_HPP
