#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

using namespace relmagic;
using namespace testutil;

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_pure_stabilizers(1).size(), 6u);
  EXPECT_EQ(enumerate_pure_stabilizers(2).size(), 60u);
  EXPECT_EQ(enumerate_pure_stabilizers(3).size(), 1080u);
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(enumerate_pure_stabilizers(n).size(), stabilizer_count(n));
}

TEST(Enumerate, RangeRejected) {
  EXPECT_THROW(enumerate_pure_stabilizers(0), InvalidInput);
  EXPECT_THROW(enumerate_pure_stabilizers(4), InvalidInput);
}

TEST(Enumerate, SingleQubitAreAxisVectors) {
  std::set<std::array<long, 3>> found;
  for (const auto& s : enumerate_pure_stabilizers(1)) {
    const Vec3 x = bloch_from_density(s.projector).x;
    found.insert({std::lround(x[0]), std::lround(x[1]), std::lround(x[2])});
    EXPECT_NEAR(norm(x), 1.0, 1e-12);
    EXPECT_NEAR(norm1(x), 1.0, 1e-12);
  }
  EXPECT_EQ(found.size(), 6u);
  for (const auto& v : all_vertices()) {
    const Vec3 b = v.bloch();
    EXPECT_TRUE(found.count({std::lround(b[0]), std::lround(b[1]), std::lround(b[2])}));
  }
}

TEST(Enumerate, ProjectorsAreIdempotent) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& s : enumerate_pure_stabilizers(n)) {
      const Matrix& p = s.projector.matrix();
      EXPECT_LE(max_abs_diff(p * p, p), 1e-10);
      EXPECT_TRUE(is_hermitian(p, 1e-12));
      EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
    }
}

TEST(Enumerate, LabelsAreStable) {
  const auto& a = enumerate_pure_stabilizers(2);
  const auto fresh = detail::generate_stabilizers(2);
  ASSERT_EQ(a.size(), fresh.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label, static_cast<int>(i));
    EXPECT_EQ(max_abs_diff(a[i].projector.matrix(), fresh[i].projector.matrix()), 0.0);
  }
}

TEST(Enumerate, TwoQubitMarginalsAreStabilizerStates) {
  for (const auto& s : enumerate_pure_stabilizers(2)) {
    const Matrix& p = s.projector.matrix();
    Matrix a(2), b(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          a(i, j) += p(2 * i + k, 2 * j + k);
          b(i, j) += p(2 * k + i, 2 * k + j);
        }
    EXPECT_LE(norm1(bloch_from_density(DensityMatrix(a)).x), 1.0 + 1e-10);
    EXPECT_LE(norm1(bloch_from_density(DensityMatrix(b)).x), 1.0 + 1e-10);
  }
}

TEST(Membership, Examples) {
  EXPECT_EQ(octahedron_membership({0.0, 0.0, 0.0}), Membership::interior);
  EXPECT_EQ(octahedron_membership({1.0 / 3, 1.0 / 3, 1.0 / 3}), Membership::boundary);
  EXPECT_EQ(octahedron_membership({kT, kT, kT}), Membership::outside);
}
