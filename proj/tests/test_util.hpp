#pragma once

#include <cmath>
#include <random>

#include "relmagic/relmagic.hpp"

namespace testutil {

using namespace relmagic;

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  const Matrix a = random_matrix(rng, dim);
  return (a + a.adjoint()) * cplx(0.5);
}

// Full-rank state from a Ginibre sample.
inline DensityMatrix random_state(std::mt19937_64& rng, std::size_t dim) {
  const Matrix a = random_matrix(rng, dim);
  Matrix m = a * a.adjoint() + Matrix::identity(dim) * cplx(0.05);
  m *= 1.0 / m.trace().real();
  return DensityMatrix((m + m.adjoint()) * cplx(0.5));
}

inline BlochVector random_bloch(std::mt19937_64& rng, double r_max = 1.0) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec3 v{n(rng), n(rng), n(rng)};
  v = (r_max * std::cbrt(u(rng)) / norm(v)) * v;
  return BlochVector(v);
}

inline BlochVector random_pure(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(rng), n(rng), n(rng)};
  return BlochVector((1.0 / norm(v)) * v);
}

// Point of facet f with every barycentric weight >= margin.
inline BlochVector random_facet_point(std::mt19937_64& rng, const FacetId& f, double margin = 0.02) {
  std::exponential_distribution<double> e(1.0);
  double w[3] = {e(rng), e(rng), e(rng)};
  const double s = w[0] + w[1] + w[2];
  Vec3 x{};
  for (int i = 0; i < 3; ++i) x[i] = f.signs[i] * (margin + (1.0 - 3.0 * margin) * w[i] / s);
  return BlochVector(x);
}

inline BlochVector random_edge_point(std::mt19937_64& rng, const EdgeId& e, double margin = 0.02) {
  std::uniform_real_distribution<double> u(margin, 1.0 - margin);
  const double w = u(rng);
  return BlochVector(w * e.a.bloch() + (1.0 - w) * e.b.bloch());
}

inline const double kT = 1.0 / std::sqrt(3.0);

}  // namespace testutil
