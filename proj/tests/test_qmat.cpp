#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

using namespace relmagic;
using namespace testutil;

TEST(HermitianEig, IdentityHasUnitEigenvalues) {
  const auto es = hermitian_eig(Matrix::identity(2));
  EXPECT_NEAR(es.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues[1], 1.0, 1e-14);
  EXPECT_LE(max_abs_diff(es.basis * es.basis.adjoint(), Matrix::identity(2)), 1e-12);
}

TEST(HermitianEig, DiagonalKeepsComputationalBasis) {
  const std::vector<double> d{0.75, 0.25};
  const auto es = hermitian_eig(Matrix::diagonal(d));
  EXPECT_DOUBLE_EQ(es.eigenvalues[0], 0.75);
  EXPECT_DOUBLE_EQ(es.eigenvalues[1], 0.25);
  EXPECT_NEAR(std::abs(es.basis(0, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(es.basis(1, 1)), 1.0, 1e-14);
}

TEST(HermitianEig, PureHLikeState) {
  const auto es = hermitian_eig(bloch_matrix(1.0, {M_SQRT1_2, 0.0, M_SQRT1_2}));
  EXPECT_NEAR(es.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues[1], 0.0, 1e-14);
}

TEST(HermitianEig, RejectsNonHermitian) {
  Matrix m{{1.0, 1.0}, {0.0, 1.0}};
  EXPECT_THROW(hermitian_eig(m), InvalidInput);
}

TEST(HermitianEig, RandomReconstruction) {
  std::mt19937_64 rng(11);
  for (std::size_t dim : {2u, 4u, 8u}) {
    for (int k = 0; k < 200; ++k) {
      const Matrix m = random_hermitian(rng, dim);
      const auto es = hermitian_eig(m);
      EXPECT_LE(max_abs_diff(es.reconstruct(), m), 1e-10);
      EXPECT_LE(max_abs_diff(es.basis.adjoint() * es.basis, Matrix::identity(dim)), 1e-10);
      for (std::size_t i = 1; i < dim; ++i) EXPECT_GE(es.eigenvalues[i - 1], es.eigenvalues[i]);
      const Matrix d = es.basis.adjoint() * m * es.basis;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          if (i != j) EXPECT_LE(std::abs(d(i, j)), 1e-10);
    }
  }
}

TEST(HermitianEig, DegenerateSpectrum) {
  // diag(1, 1, 2, 2) rotated: any basis of each eigenspace is acceptable.
  std::mt19937_64 rng(3);
  const auto u = hermitian_eig(random_hermitian(rng, 4)).basis;
  const std::vector<double> d{1.0, 1.0, 2.0, 2.0};
  const Matrix m = u * Matrix::diagonal(d) * u.adjoint();
  const auto es = hermitian_eig(m);
  EXPECT_NEAR(es.eigenvalues[0], 2.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues[3], 1.0, 1e-12);
  EXPECT_LE(max_abs_diff(es.reconstruct(), m), 1e-10);
}

TEST(RelativeEntropy, IdenticalStatesGiveZero) {
  std::mt19937_64 rng(5);
  const auto rho = random_state(rng, 4);
  EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-10);
}

TEST(RelativeEntropy, PureAgainstMaximallyMixed) {
  const auto zero = density_from_bloch({0.0, 0.0, 1.0});
  const auto mixed = density_from_bloch({0.0, 0.0, 0.0});
  EXPECT_NEAR(relative_entropy(zero, mixed), 1.0, 1e-12);
}

TEST(RelativeEntropy, TStateAgainstCentroid) {
  const auto t = density_from_bloch({kT, kT, kT});
  const auto c = density_from_bloch({1.0 / 3, 1.0 / 3, 1.0 / 3});
  EXPECT_NEAR(relative_entropy(t, c), -std::log2((1.0 + kT) / 2.0), 1e-12);
  EXPECT_NEAR(relative_entropy(t, c), 0.3424, 1e-4);
}

TEST(RelativeEntropy, InfiniteWithoutSupport) {
  const auto zero = density_from_bloch({0.0, 0.0, 1.0});
  const auto one = density_from_bloch({0.0, 0.0, -1.0});
  EXPECT_TRUE(std::isinf(relative_entropy(zero, one)));
}

TEST(RelativeEntropy, DimensionMismatchRejected) {
  const auto a = density_from_bloch({0.0, 0.0, 0.0});
  std::mt19937_64 rng(1);
  EXPECT_THROW(relative_entropy(a, random_state(rng, 4)), InvalidInput);
}

TEST(RelativeEntropy, ZeroOnlyForEqualStates) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    const auto a = random_state(rng, 4);
    const auto b = random_state(rng, 4);
    const double d = relative_entropy(a, b);
    EXPECT_GE(d, -1e-10);
    if (max_abs_diff(a.matrix(), b.matrix()) > 1e-8) EXPECT_GT(d, 0.0);
  }
}

TEST(Products, HadamardOfIdentities) {
  EXPECT_EQ(max_abs_diff(hadamard(Matrix::identity(2), Matrix::identity(2)), Matrix::identity(2)), 0.0);
}

TEST(Products, TensorOfDiagonals) {
  const double a = 2, b = 3, c = 5, d = 7;
  const std::vector<double> x{a, b}, y{c, d}, z{a * c, a * d, b * c, b * d};
  EXPECT_EQ(max_abs_diff(tensor(Matrix::diagonal(x), Matrix::diagonal(y)), Matrix::diagonal(z)), 0.0);
}

TEST(Products, ShapeMismatchRejected) {
  EXPECT_THROW(hadamard(Matrix::identity(2), Matrix::identity(4)), InvalidInput);
  EXPECT_THROW(Matrix::identity(2) + Matrix::identity(4), InvalidInput);
}

TEST(Products, MixedProductIdentity) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 1000; ++k) {
    const Matrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
    const Matrix c = random_matrix(rng, 2), d = random_matrix(rng, 2);
    EXPECT_LE(max_abs_diff(tensor(hadamard(a, b), hadamard(c, d)), hadamard(tensor(a, c), tensor(b, d))), 1e-14);
  }
}

TEST(Products, DiagonalCommutesThroughHadamard) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const Matrix a = random_matrix(rng, 4), b = random_matrix(rng, 4);
    const std::vector<double> dv{u(rng), u(rng), u(rng), u(rng)};
    const Matrix d = Matrix::diagonal(dv);
    EXPECT_LE(max_abs_diff(hadamard(a, b) * d, hadamard(a * d, b)), 1e-14);
    EXPECT_LE(max_abs_diff(d * hadamard(a, b), hadamard(d * a, b)), 1e-14);
  }
}

TEST(DensityMatrixType, ValidatesInvariants) {
  EXPECT_THROW(DensityMatrix(Matrix{{1.0, 0.0}, {0.0, 1.0}}), InvalidInput);
  EXPECT_THROW(DensityMatrix(Matrix{{1.5, 0.0}, {0.0, -0.5}}), InvalidInput);
  EXPECT_THROW(DensityMatrix(Matrix{{0.5, 0.1}, {0.0, 0.5}}), InvalidInput);
  EXPECT_THROW(DensityMatrix(Matrix::identity(3) * cplx(1.0 / 3)), InvalidInput);
  EXPECT_EQ(DensityMatrix(Matrix::identity(8) * cplx(0.125)).qubits(), 3);
}

TEST(VonNeumann, MaximallyMixed) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(Matrix::identity(4) * cplx(0.25))), 2.0, 1e-12);
}
