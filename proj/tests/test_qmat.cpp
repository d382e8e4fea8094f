#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qgess/qmat.hpp"

using namespace qgess;

namespace {

CMatrix from_oracle(const oracle::Mat& m) {
  CMatrix out(m.size(), m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) out(i, j) = m[i][j];
  return out;
}

UnitaryMatrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = Complex(n(rng), n(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  return UnitaryMatrix(qr.householderQ() * CMatrix::Identity(dim, dim));
}

StateVector random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(n(rng), n(rng));
  v /= v.norm();
  return StateVector(v);
}

std::vector<double> sorted_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("tensor matches an independent Kronecker product") {
  std::mt19937_64 rng(1);
  const oracle::Mat a = oracle::random_unitary2(rng), b = oracle::random_unitary2(rng);
  const CMatrix got = tensor(from_oracle(a), from_oracle(b));
  CHECK(max_abs(got - from_oracle(oracle::kron(a, b))) < 1e-15);
}

TEST_CASE("tensor places |ij> at index i*dim_B + j") {
  CVector e1 = CVector::Zero(2), e0 = CVector::Zero(3);
  e1(1) = 1.0;
  e0(2) = 1.0;
  const CVector v = tensor(e1, e0);
  REQUIRE(v.size() == 6);
  CHECK(v(1 * 3 + 2) == Complex(1.0));
}

TEST_CASE("tensor is associative") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const UnitaryMatrix a = random_unitary(2, rng), b = random_unitary(2, rng),
                        c = random_unitary(2, rng);
    const CMatrix left = tensor(tensor(a, b), c).matrix();
    const CMatrix right = tensor(a, tensor(b, c)).matrix();
    CHECK(max_abs(left - right) < 1e-15);
  }
  std::uniform_int_distribution<int> n(-5, 5);
  auto integer_matrix = [&] {
    CMatrix m(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = Complex(n(rng), n(rng));
    return m;
  };
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = integer_matrix(), b = integer_matrix(), c = integer_matrix();
    CHECK(max_abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))) == 0.0);
  }
}

TEST_CASE("tensor beyond 9x9 is rejected") {
  const CMatrix big = CMatrix::Identity(4, 4);
  CHECK_THROWS_AS(tensor(big, CMatrix(CMatrix::Identity(3, 3))), std::length_error);
  CHECK_THROWS_AS(tensor(CVector(CVector::Ones(4)), CVector(CVector::Ones(3))), std::length_error);
  CHECK_NOTHROW(tensor(CMatrix(CMatrix::Identity(3, 3)), CMatrix(CMatrix::Identity(3, 3))));
}

TEST_CASE("unitary constructor enforces the unitarity invariant") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = 1.0 + 1e-9;
  CHECK_THROWS_AS(UnitaryMatrix{m}, std::invalid_argument);
  CHECK_THROWS_AS(UnitaryMatrix{CMatrix::Identity(5, 5)}, std::invalid_argument);
  std::mt19937_64 rng(3);
  for (int dim : {2, 3, 4, 8, 9}) {
    const UnitaryMatrix u = random_unitary(dim, rng);
    CHECK(max_abs(u.adjoint().matrix() * u.matrix() - CMatrix::Identity(dim, dim)) < 1e-12);
    const UnitaryMatrix uu = u * u.adjoint();
    CHECK(max_abs(uu.matrix() - CMatrix::Identity(dim, dim)) < 1e-12);
  }
}

TEST_CASE("state vectors must be normalized and of a composite dimension") {
  CHECK_THROWS_AS(StateVector{CVector::Ones(4)}, std::invalid_argument);
  CHECK_THROWS_AS(StateVector{CVector::Ones(1)}, std::invalid_argument);
  CHECK_THROWS_AS(StateVector::basis(4, 4), std::out_of_range);
  const StateVector s = StateVector::basis(9, 4);
  CHECK(s.probability(4) == 1.0);
}

TEST_CASE("density matrix validation") {
  CMatrix rho = CMatrix::Zero(4, 4);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  CHECK_NOTHROW(DensityMatrix{rho});
  CMatrix bad_trace = rho;
  bad_trace(1, 1) = 0.6;
  CHECK_THROWS_AS(DensityMatrix{bad_trace}, std::invalid_argument);
  CMatrix not_hermitian = rho;
  not_hermitian(0, 1) = Complex(0.1, 0.1);
  CHECK_THROWS_AS(DensityMatrix{not_hermitian}, std::invalid_argument);
  CMatrix negative = CMatrix::Zero(4, 4);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);
  const DensityDiagnostics d = validate_density(negative);
  CHECK(d.min_eigenvalue == doctest::Approx(-0.5));
  CHECK_FALSE(d.valid());
}

TEST_CASE("evolve_density preserves trace and spectrum") {
  std::mt19937_64 rng(4);
  for (int dim : {4, 8, 9}) {
    for (int k = 0; k < 25; ++k) {
      const DensityMatrix a = DensityMatrix::pure(random_state(dim, rng));
      const DensityMatrix b = DensityMatrix::pure(random_state(dim, rng));
      const std::array<double, 2> w = {0.3, 0.7};
      const std::array<DensityMatrix, 2> terms = {a, b};
      const DensityMatrix rho = convex_mixture(w, terms);
      const DensityMatrix out = evolve_density(rho, random_unitary(dim, rng));
      CHECK(std::abs(out.matrix().trace() - Complex(1.0)) < 1e-10);
      const auto before = sorted_eigenvalues(rho.matrix());
      const auto after = sorted_eigenvalues(out.matrix());
      for (int i = 0; i < dim; ++i) CHECK(std::abs(before[i] - after[i]) < 1e-10);
      CHECK(validate_density(out.matrix()).valid());
    }
  }
}

TEST_CASE("apply agrees with the independent matrix-vector product") {
  std::mt19937_64 rng(5);
  const oracle::Mat a = oracle::random_unitary2(rng), b = oracle::random_unitary2(rng);
  const oracle::Mat ab = oracle::kron(a, b);
  const oracle::Vec psi0 = {0.6, 0.0, 0.0, oracle::C(0.0, 0.8)};
  const oracle::Vec want = oracle::mul(ab, psi0);
  CVector v(4);
  for (int i = 0; i < 4; ++i) v(i) = psi0[i];
  const StateVector got = apply(UnitaryMatrix(from_oracle(ab)), StateVector(v));
  for (int i = 0; i < 4; ++i) CHECK(std::abs(got.amplitude(i) - want[i]) < 1e-14);
}

TEST_CASE("dimension mismatches are rejected") {
  const DensityMatrix rho = DensityMatrix::pure(StateVector::basis(4, 0));
  CHECK_THROWS_AS(evolve_density(rho, UnitaryMatrix::identity(9)), std::invalid_argument);
  CHECK_THROWS_AS(apply(UnitaryMatrix::identity(8), StateVector::basis(4, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(UnitaryMatrix::identity(2) * UnitaryMatrix::identity(3), std::invalid_argument);
  const std::array<double, 2> w = {0.5, 0.5};
  const std::array<DensityMatrix, 2> mixed = {rho, DensityMatrix::pure(StateVector::basis(9, 0))};
  CHECK_THROWS_AS(convex_mixture(w, mixed), std::invalid_argument);
}

TEST_CASE("convex_mixture rejects bad weights") {
  const DensityMatrix a = DensityMatrix::pure(StateVector::basis(4, 0));
  const DensityMatrix b = DensityMatrix::pure(StateVector::basis(4, 3));
  const std::array<DensityMatrix, 2> terms = {a, b};
  CHECK_THROWS_AS(convex_mixture(std::array<double, 2>{0.7, 0.7}, terms), std::invalid_argument);
  CHECK_THROWS_AS(convex_mixture(std::array<double, 2>{1.5, -0.5}, terms), std::invalid_argument);
  const DensityMatrix m = convex_mixture(std::array<double, 2>{0.25, 0.75}, terms);
  CHECK(m.population(0) == doctest::Approx(0.25));
  CHECK(m.population(3) == doctest::Approx(0.75));
  const std::array<double, 4> weights = {1, 2, 3, 4};
  CHECK(m.expectation_diagonal(weights) == doctest::Approx(0.25 * 1 + 0.75 * 4));
}

TEST_CASE("commutator of commuting and non-commuting operators") {
  const CMatrix z = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
  const CMatrix x = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
  CHECK(max_abs(commutator(z, z)) == 0.0);
  const CMatrix c = commutator(z, x);
  CHECK(c(0, 1) == Complex(2.0));
  CHECK(c(1, 0) == Complex(-2.0));
}
