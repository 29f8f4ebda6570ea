#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace relmagic;
using namespace testutil;

namespace {

DensityMatrix psi2q() {
  const std::vector<cplx> a{0.5, 0.5, 0.5, cplx(0.0, 0.5)};
  return DensityMatrix::pure(a);
}

DensityMatrix t_state() { return density_from_bloch({kT, kT, kT}); }

}  // namespace

TEST(Optimizer, StabilizerStatesAreFree) {
  for (int n = 1; n <= 2; ++n)
    for (const auto& s : enumerate_pure_stabilizers(n)) {
      const auto r = relative_entropy_of_magic(s.projector, 1e-6);
      EXPECT_LE(r.value, 1e-6);
    }
}

TEST(Optimizer, TwoQubitState) {
  const auto r = relative_entropy_of_magic(psi2q(), 1e-6);
  EXPECT_NEAR(r.value, 0.678, 0.003);
  EXPECT_LE(r.gap, 1e-6);
}

TEST(Optimizer, TwoCopiesOfT) {
  const auto r = relative_entropy_of_magic(tensor(t_state(), t_state()), 1e-6);
  EXPECT_NEAR(r.value, 0.685, 0.003);
  EXPECT_NEAR(r.value, -2.0 * std::log2((1 + kT) / 2), 2e-3);
}

TEST(Optimizer, ResultInvariants) {
  OptimOptions opt;
  opt.record_history = true;
  const auto r = relative_entropy_of_magic(psi2q(), opt);
  const auto& verts = enumerate_pure_stabilizers(2);
  ASSERT_EQ(r.weights.size(), verts.size());
  Matrix sum(4);
  double total = 0.0;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    EXPECT_GE(r.weights[j], 0.0);
    total += r.weights[j];
    sum += verts[j].projector.matrix() * cplx(r.weights[j]);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_LE(max_abs_diff(sum, r.sigma_star.matrix()), 1e-10);
  EXPECT_GE(r.value, -1e-9);
  EXPECT_NEAR(r.value, relative_entropy(psi2q(), r.sigma_star), 1e-9);
  for (std::size_t i = 1; i < r.objective_history.size(); ++i)
    EXPECT_LE(r.objective_history[i], r.objective_history[i - 1] + 1e-12);
}

TEST(Optimizer, ToleranceRangeEnforced) {
  EXPECT_THROW(relative_entropy_of_magic(t_state(), 1e-11), InvalidInput);
  EXPECT_THROW(relative_entropy_of_magic(t_state(), 1e-2), InvalidInput);
}

TEST(Optimizer, RecoversRayClosestState) {
  std::mt19937_64 rng(151);
  std::uniform_real_distribution<double> u(0.3, 1.0);
  for (int k = 0; k < 20; ++k) {
    const auto ray = facet_ray(random_facet_point(rng, all_facets()[k % 8], 0.05));
    const double t = u(rng) * ray.t_max;
    const auto r = relative_entropy_of_magic(density_from_bloch(ray.at(t)), 1e-9);
    EXPECT_LE(distance(bloch_from_density(r.sigma_star).x, ray.sigma.x), 1e-3);
    EXPECT_NEAR(r.value, rel_entropy_closed_form(ray.sigma, ray.phi, t), 1e-5);
  }
}

TEST(Optimizer, CliffordInvariant) {
  std::mt19937_64 rng(157);
  const auto gates = clifford_generators(2);
  const auto rho = random_state(rng, 4);
  const double base = relative_entropy_of_magic(rho, 1e-8).value;
  for (int k = 0; k < 5; ++k) {
    Matrix u = Matrix::identity(4);
    for (int j = 0; j < 6; ++j) u = gates[std::uniform_int_distribution<std::size_t>(0, gates.size() - 1)(rng)] * u;
    Matrix m = u * rho.matrix() * u.adjoint();
    EXPECT_NEAR(relative_entropy_of_magic(DensityMatrix((m + m.adjoint()) * cplx(0.5)), 1e-8).value, base, 1e-6);
  }
}

TEST(Optimizer, Subadditive) {
  std::mt19937_64 rng(163);
  for (int k = 0; k < 5; ++k) {
    const auto a = density_from_bloch(random_pure(rng));
    const auto b = density_from_bloch(random_bloch(rng));
    const double ra = closest_stabilizer_1q(bloch_from_density(a)).value;
    const double rb = closest_stabilizer_1q(bloch_from_density(b)).value;
    EXPECT_LE(relative_entropy_of_magic(tensor(a, b), 1e-7).value, ra + rb + 1e-7);
  }
}

TEST(Optimizer, ThreeQubits) {
  const auto t = t_state();
  const auto r = relative_entropy_of_magic(tensor(tensor(t, t), t), 1e-5);
  EXPECT_LE(r.value, 3.0 * -std::log2((1 + kT) / 2) + 1e-5);
  EXPECT_GT(r.value, 0.9);
}

TEST(ClosestStabilizer1q, TState) {
  const auto c = closest_stabilizer_1q({kT, kT, kT});
  EXPECT_NEAR(c.value, -std::log2((1 + kT) / 2), 1e-9);
  EXPECT_LE(distance(c.sigma.x, {1.0 / 3, 1.0 / 3, 1.0 / 3}), 1e-9);
}

TEST(ClosestStabilizer1q, HState) {
  const auto c = closest_stabilizer_1q({M_SQRT1_2, M_SQRT1_2, 0.0});
  EXPECT_NEAR(c.value, -std::log2((1 + M_SQRT1_2) / 2), 1e-9);
  EXPECT_LE(distance(c.sigma.x, {0.5, 0.5, 0.0}), 1e-6);
}

TEST(ClosestStabilizer1q, InsideIsFree) {
  const auto c = closest_stabilizer_1q({0.2, -0.1, 0.3});
  EXPECT_EQ(c.value, 0.0);
  EXPECT_LE(distance(c.sigma.x, {0.2, -0.1, 0.3}), 0.0);
}

TEST(ClosestStabilizer1q, AgreesWithOptimizer) {
  std::mt19937_64 rng(167);
  for (int k = 0; k < 100; ++k) {
    const auto x = k % 2 ? random_pure(rng) : random_bloch(rng);
    const auto fast = closest_stabilizer_1q(x);
    const auto slow = relative_entropy_of_magic(density_from_bloch(x), 1e-10);
    EXPECT_NEAR(fast.value, slow.value, 1e-6);
    EXPECT_LE(distance(fast.sigma.x, bloch_from_density(slow.sigma_star).x), 1e-4);
  }
}
