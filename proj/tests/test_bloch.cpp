#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace relmagic;
using namespace testutil;

namespace {

// Tr(phi S) for the six single-qubit stabilizer projectors, via matrices.
double min_vertex_trace(const SupportingHyperplane& h) {
  double m = 1e300;
  for (const auto& s : enumerate_pure_stabilizers(1)) m = std::min(m, trace_product(h.matrix(), s.projector.matrix()));
  return m;
}

}  // namespace

TEST(BlochConversion, Examples) {
  const auto zero = density_from_bloch({0.0, 0.0, 1.0});
  EXPECT_LE(max_abs_diff(zero.matrix(), Matrix{{1.0, 0.0}, {0.0, 0.0}}), 1e-15);

  // |T> = cos(theta/2)|0> + e^{i pi/4} sin(theta/2)|1>, cos(theta) = 1/sqrt(3)
  const double th = std::acos(kT);
  const std::vector<cplx> t{std::cos(th / 2), std::polar(std::sin(th / 2), M_PI / 4)};
  EXPECT_LE(max_abs_diff(density_from_bloch({kT, kT, kT}).matrix(), DensityMatrix::pure(t).matrix()), 1e-14);

  // |H> = (|0> + e^{i pi/4}|1>) / sqrt(2)
  const std::vector<cplx> h{M_SQRT1_2, std::polar(M_SQRT1_2, M_PI / 4)};
  EXPECT_LE(max_abs_diff(density_from_bloch({M_SQRT1_2, M_SQRT1_2, 0.0}).matrix(), DensityMatrix::pure(h).matrix()),
            1e-14);
}

TEST(BlochConversion, RoundTrip) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 1000; ++k) {
    const auto b = random_bloch(rng);
    EXPECT_LE(distance(bloch_from_density(density_from_bloch(b)).x, b.x), 1e-14);
  }
}

TEST(BlochConversion, TooLongRejected) {
  EXPECT_THROW(BlochVector(1.0, 0.1, 0.0), InvalidInput);
  EXPECT_NO_THROW(BlochVector(1.0 + 5e-13, 0.0, 0.0));
}

TEST(ClassifyBoundary, Centroid) {
  const auto p = classify_boundary({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto* f = std::get_if<FacetPoint>(&p);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->facet.name(), "+++");
  for (double a : f->barycentric) EXPECT_NEAR(a, 1.0 / 3, 1e-15);
}

TEST(ClassifyBoundary, EdgeMidpoint) {
  const auto p = classify_boundary({0.5, 0.0, 0.5});
  const auto* e = std::get_if<EdgePoint>(&p);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->edge.name(), "s1s3");
  EXPECT_DOUBLE_EQ(e->weights[0], 0.5);
  EXPECT_DOUBLE_EQ(e->weights[1], 0.5);
}

TEST(ClassifyBoundary, Vertex) {
  const auto p = classify_boundary({1.0, 0.0, 0.0});
  const auto* v = std::get_if<VertexPoint>(&p);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->vertex.name(), "s1");
}

TEST(ClassifyBoundary, TiesGoToLowerDimension) {
  const auto p = classify_boundary({0.5, 1e-11, 0.5 - 1e-11});
  EXPECT_TRUE(std::holds_alternative<EdgePoint>(p));
}

TEST(ClassifyBoundary, OffBoundaryRejected) {
  EXPECT_THROW(classify_boundary({0.1, 0.1, 0.1}), InvalidInput);
  EXPECT_THROW(classify_boundary({kT, kT, kT}), InvalidInput);
}

TEST(ClassifyBoundary, CoordinatesAreConvex) {
  std::mt19937_64 rng(43);
  for (const auto& f : all_facets()) {
    for (int k = 0; k < 50; ++k) {
      const auto p = classify_boundary(random_facet_point(rng, f));
      const auto& fp = std::get<FacetPoint>(p);
      EXPECT_EQ(fp.facet.name(), f.name());
      EXPECT_NEAR(fp.barycentric[0] + fp.barycentric[1] + fp.barycentric[2], 1.0, 1e-14);
      for (double a : fp.barycentric) EXPECT_GE(a, 0.0);
    }
  }
}

TEST(ClassifyBoundary, CovariantUnderRotations) {
  std::mt19937_64 rng(47);
  const FacetId f = FacetId::parse("+-+");
  for (const auto& rot : octahedral_rotations()) {
    const auto x = random_facet_point(rng, f);
    const auto fp = std::get<FacetPoint>(classify_boundary(x));
    const auto rp = std::get<FacetPoint>(classify_boundary(BlochVector(rotate(rot, x.x))));
    // Rotated facet is the image of the original normal.
    const Vec3 n = rotate(rot, fp.facet.normal());
    EXPECT_LE(distance(n, rp.facet.normal()), 1e-14);
    std::vector<double> a(fp.barycentric.begin(), fp.barycentric.end());
    std::vector<double> b(rp.barycentric.begin(), rp.barycentric.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-14);

    const auto e = random_edge_point(rng, EdgeId::make({1}, {3}));
    const auto ep = classify_boundary(BlochVector(rotate(rot, e.x)));
    EXPECT_TRUE(std::holds_alternative<EdgePoint>(ep));
  }
  EXPECT_EQ(octahedral_rotations().size(), 24u);
}

TEST(FacetHyperplane, PositiveOctant) {
  const auto h = facet_hyperplane(FacetId::parse("+++"));
  for (double c : h.x_phi) EXPECT_NEAR(c, -M_SQRT1_2, 1e-15);
  const auto m = facet_hyperplane(FacetId::parse("---"));
  for (double c : m.x_phi) EXPECT_NEAR(c, M_SQRT1_2, 1e-15);
}

TEST(FacetHyperplane, NormalizedTangentAndValid) {
  std::mt19937_64 rng(53);
  for (const auto& f : all_facets()) {
    const auto h = facet_hyperplane(f);
    EXPECT_NEAR(h.phi0 * h.phi0 + h.r_phi() * h.r_phi(), 2.0, 1e-12);
    EXPECT_NEAR(trace_product(h.matrix(), h.matrix()), 1.0, 1e-12);
    EXPECT_GE(min_vertex_trace(h), -1e-12);
    int zeros = 0;
    for (const auto& s : enumerate_pure_stabilizers(1))
      zeros += std::abs(trace_product(h.matrix(), s.projector.matrix())) < 1e-12;
    EXPECT_EQ(zeros, 3);
    for (int k = 0; k < 20; ++k) {
      const auto x = random_facet_point(rng, f);
      EXPECT_NEAR(h.phi0, -dot(x.x, h.x_phi), 1e-10);
    }
  }
}

TEST(FacetHyperplane, UniqueOnFacetInterior) {
  // Perturbing x_phi while keeping tangency at an interior point breaks a vertex constraint.
  std::mt19937_64 rng(59);
  const FacetId f = FacetId::parse("+++");
  const auto x = random_facet_point(rng, f, 0.1);
  const auto h = facet_hyperplane(f);
  for (int k = 0; k < 200; ++k) {
    Vec3 dir = random_pure(rng).x;
    SupportingHyperplane p = h;
    p.x_phi = h.x_phi + 1e-3 * dir;
    p.phi0 = -dot(x.x, p.x_phi);
    const double s = std::sqrt(2.0 / (p.phi0 * p.phi0 + dot(p.x_phi, p.x_phi)));
    p.phi0 *= s;
    p.x_phi = s * p.x_phi;
    // Perturbations along the facet normal only rescale; ignore those.
    const Vec3 n = f.normal();
    if (norm(dir - dot(dir, n) * n) < 1e-2) continue;
    EXPECT_LT(p.vertex_margin(), -1e-7);
  }
}

TEST(EdgeHyperplane, SymmetricMember) {
  const auto h = edge_hyperplane(EdgeId::make({1}, {3}), 0.0);
  const double b = std::sqrt(2.0 / 3.0);
  EXPECT_NEAR(h.x_phi[0], -b, 1e-15);
  EXPECT_NEAR(h.x_phi[1], 0.0, 1e-15);
  EXPECT_NEAR(h.x_phi[2], -b, 1e-15);
}

TEST(EdgeHyperplane, ExtremalMemberIsAdjacentFacet) {
  const auto h = edge_hyperplane(EdgeId::make({1}, {3}), M_SQRT1_2);
  EXPECT_NEAR(h.x_phi[0], -M_SQRT1_2, 1e-15);
  EXPECT_NEAR(h.x_phi[1], M_SQRT1_2, 1e-15);
  EXPECT_NEAR(h.x_phi[2], -M_SQRT1_2, 1e-15);
  const auto f = facet_hyperplane(FacetId::parse("+-+"));
  EXPECT_LE(distance(h.x_phi, f.x_phi), 1e-15);
  EXPECT_NEAR(h.phi0, f.phi0, 1e-15);
}

TEST(EdgeHyperplane, OutOfRangeRejected) {
  EXPECT_THROW(edge_hyperplane(EdgeId::make({1}, {3}), 0.71), InvalidInput);
  EXPECT_THROW(edge_hyperplane(EdgeId::make({1}, {3}), -0.8), InvalidInput);
}

TEST(EdgeHyperplane, FamilyIsValidAndTangent) {
  std::mt19937_64 rng(61);
  for (const auto& e : all_edges()) {
    for (int k = 0; k <= 40; ++k) {
      const double c = -M_SQRT1_2 + k * M_SQRT2 / 40;
      const auto h = edge_hyperplane(e, c);
      EXPECT_NEAR(h.phi0 * h.phi0 + h.r_phi() * h.r_phi(), 2.0, 1e-12);
      EXPECT_GE(min_vertex_trace(h), -1e-12);
      for (int j = 0; j < 5; ++j) EXPECT_NEAR(h.trace_with(random_edge_point(rng, e).x), 0.0, 1e-12);
    }
  }
}

TEST(EdgeHyperplane, ContinuousInC) {
  const auto e = EdgeId::make({2}, {6});
  for (int k = 0; k < 100; ++k) {
    const double c = -0.7 + 1.4 * k / 100;
    const auto a = edge_hyperplane(e, c), b = edge_hyperplane(e, c + 1e-7);
    EXPECT_LE(distance(a.x_phi, b.x_phi), 1e-6);
  }
}

TEST(Ids, ParseAndName) {
  EXPECT_EQ(FacetId::parse("-+-").name(), "-+-");
  EXPECT_THROW(FacetId::parse("++"), InvalidInput);
  EXPECT_EQ(parse_edge("s3s1").name(), "s1s3");
  EXPECT_THROW(parse_edge("s1s4"), InvalidInput);
  EXPECT_EQ(all_edges().size(), 12u);
  EXPECT_EQ(all_facets().size(), 8u);
}
