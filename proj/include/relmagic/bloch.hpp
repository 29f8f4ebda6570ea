#pragma once

// Single-qubit Bloch geometry: conversion to and from density matrices, the
// stabilizer octahedron's faces, and the supporting hyperplanes attached to them.

#include <array>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "relmagic/errors.hpp"
#include "relmagic/qmat.hpp"

namespace relmagic {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double norm1(const Vec3& a) { return std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Bloch vector of the state (I + x.sigma) / 2.
struct BlochVector {
  static constexpr double kTol = 1e-12;

  Vec3 x{};

  BlochVector() = default;
  BlochVector(double x1, double x2, double x3) : BlochVector(Vec3{x1, x2, x3}) {}
  explicit BlochVector(const Vec3& v) : x(v) {
    if (norm(x) > 1.0 + kTol) throw InvalidInput("BlochVector: length exceeds 1");
  }

  double r() const { return norm(x); }
  double operator[](std::size_t i) const { return x[i]; }
};

inline const std::array<Matrix, 3>& pauli() {
  static const std::array<Matrix, 3> p = {
      Matrix{{0.0, 1.0}, {1.0, 0.0}},
      Matrix{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}},
      Matrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  return p;
}

// (c0 I + v.sigma) / 2
inline Matrix bloch_matrix(double c0, const Vec3& v) {
  Matrix m = Matrix::identity(2) * cplx(c0);
  for (int i = 0; i < 3; ++i) m += pauli()[i] * cplx(v[i]);
  m *= 0.5;
  return m;
}

inline DensityMatrix density_from_bloch(const BlochVector& b) { return DensityMatrix(bloch_matrix(1.0, b.x)); }

inline BlochVector bloch_from_density(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw InvalidInput("bloch_from_density: single-qubit state required");
  const Matrix& m = rho.matrix();
  return BlochVector(2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real());
}

// ---------------------------------------------------------------------------
// Faces of the stabilizer octahedron.

// Pure stabilizer vertices s1..s6 = +x, +y, +z, -x, -y, -z.
struct VertexId {
  int index = 1;  // 1..6

  int axis() const { return (index - 1) % 3; }
  int sign() const { return index <= 3 ? 1 : -1; }
  Vec3 bloch() const {
    Vec3 v{};
    v[axis()] = sign();
    return v;
  }
  std::string name() const { return "s" + std::to_string(index); }
  static VertexId from_axis(int axis, int sign) { return {axis + 1 + (sign < 0 ? 3 : 0)}; }
  friend bool operator==(const VertexId&, const VertexId&) = default;
};

inline std::array<VertexId, 6> all_vertices() { return {{{1}, {2}, {3}, {4}, {5}, {6}}}; }

// Edge between two non-antipodal vertices, stored with a.index < b.index.
struct EdgeId {
  VertexId a, b;

  static EdgeId make(VertexId u, VertexId v) {
    if (u.axis() == v.axis()) throw InvalidInput("EdgeId: vertices " + u.name() + "," + v.name() + " are not adjacent");
    return u.index < v.index ? EdgeId{u, v} : EdgeId{v, u};
  }
  // Coordinate axis orthogonal to the edge.
  int free_axis() const { return 3 - a.axis() - b.axis(); }
  std::string name() const { return a.name() + b.name(); }
  friend bool operator==(const EdgeId&, const EdgeId&) = default;
};

inline std::vector<EdgeId> all_edges() {
  std::vector<EdgeId> edges;
  for (const auto& u : all_vertices())
    for (const auto& v : all_vertices())
      if (u.index < v.index && u.axis() != v.axis()) edges.push_back(EdgeId::make(u, v));
  return edges;
}

// Facet labelled by the sign octant it faces.
struct FacetId {
  std::array<int, 3> signs{1, 1, 1};

  Vec3 normal() const {
    const double k = 1.0 / std::sqrt(3.0);
    return {k * signs[0], k * signs[1], k * signs[2]};
  }
  Vec3 centroid() const { return {signs[0] / 3.0, signs[1] / 3.0, signs[2] / 3.0}; }
  std::array<VertexId, 3> vertices() const {
    return {VertexId::from_axis(0, signs[0]), VertexId::from_axis(1, signs[1]), VertexId::from_axis(2, signs[2])};
  }
  std::string name() const {
    std::string s;
    for (int v : signs) s += v > 0 ? '+' : '-';
    return s;
  }
  static FacetId parse(const std::string& s) {
    if (s.size() != 3) throw InvalidInput("FacetId: expected three signs, got '" + s + "'");
    FacetId f;
    for (int i = 0; i < 3; ++i) {
      if (s[i] == '+') f.signs[i] = 1;
      else if (s[i] == '-') f.signs[i] = -1;
      else throw InvalidInput("FacetId: bad sign character in '" + s + "'");
    }
    return f;
  }
  friend bool operator==(const FacetId&, const FacetId&) = default;
};

inline std::vector<FacetId> all_facets() {
  std::vector<FacetId> f;
  for (int a : {1, -1})
    for (int b : {1, -1})
      for (int c : {1, -1}) f.push_back(FacetId{{a, b, c}});
  return f;
}

inline EdgeId parse_edge(const std::string& s) {
  if (s.size() != 4 || s[0] != 's' || s[2] != 's' || s[1] < '1' || s[1] > '6' || s[3] < '1' || s[3] > '6')
    throw InvalidInput("EdgeId: expected form sNsM, got '" + s + "'");
  return EdgeId::make({s[1] - '0'}, {s[3] - '0'});
}

struct FacetPoint {
  FacetId facet;
  Vec3 barycentric{};  // weights of facet.vertices()
};
struct EdgePoint {
  EdgeId edge;
  std::array<double, 2> weights{};  // weights of edge.a, edge.b
};
struct VertexPoint {
  VertexId vertex;
};
using BoundaryPoint = std::variant<FacetPoint, EdgePoint, VertexPoint>;

enum class Membership { interior, boundary, outside };

inline constexpr double kBoundaryTol = 1e-10;

inline Membership octahedron_membership(const BlochVector& b) {
  const double s = norm1(b.x);
  if (s < 1.0 - kBoundaryTol) return Membership::interior;
  if (s <= 1.0 + kBoundaryTol) return Membership::boundary;
  return Membership::outside;
}

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::interior: return "interior";
    case Membership::boundary: return "boundary";
    case Membership::outside: return "outside";
  }
  return "?";
}

// Locate a boundary point on its lowest-dimensional face; coordinates within
// kBoundaryTol of zero count as zero.
inline BoundaryPoint classify_boundary(const BlochVector& b) {
  if (octahedron_membership(b) != Membership::boundary)
    throw InvalidInput("classify_boundary: point is not on the octahedron boundary");
  std::array<int, 3> signs{};
  int zeros = 0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(b.x[i]) <= kBoundaryTol) {
      ++zeros;
    } else {
      signs[i] = b.x[i] > 0 ? 1 : -1;
    }
  }
  const double s = norm1(b.x);
  if (zeros == 0) {
    FacetPoint p{FacetId{signs}, {}};
    for (int i = 0; i < 3; ++i) p.barycentric[i] = std::abs(b.x[i]) / s;
    return p;
  }
  if (zeros == 1) {
    std::vector<VertexId> vs;
    for (int i = 0; i < 3; ++i)
      if (signs[i] != 0) vs.push_back(VertexId::from_axis(i, signs[i]));
    EdgePoint p{EdgeId::make(vs[0], vs[1]), {}};
    p.weights = {std::abs(b.x[p.edge.a.axis()]) / s, std::abs(b.x[p.edge.b.axis()]) / s};
    return p;
  }
  for (int i = 0; i < 3; ++i)
    if (signs[i] != 0) return VertexPoint{VertexId::from_axis(i, signs[i])};
  throw InvalidInput("classify_boundary: zero vector");
}

// ---------------------------------------------------------------------------
// Supporting hyperplanes phi = (phi0 I + x_phi.sigma) / 2.

struct SupportingHyperplane {
  double phi0 = 0.0;
  Vec3 x_phi{};

  double r_phi() const { return norm(x_phi); }
  Matrix matrix() const { return bloch_matrix(phi0, x_phi); }
  // Tr(phi rho) for the single-qubit state with Bloch vector x.
  double trace_with(const Vec3& x) const { return 0.5 * (phi0 + dot(x_phi, x)); }
  // Tr(phi^2).
  double norm_squared() const { return 0.5 * (phi0 * phi0 + dot(x_phi, x_phi)); }
  // min_j Tr(phi S_j) over the six pure stabilizer states.
  double vertex_margin() const {
    double m = trace_with(all_vertices()[0].bloch());
    for (const auto& v : all_vertices()) m = std::min(m, trace_with(v.bloch()));
    return m;
  }
};

// Unique unit-normalized supporting hyperplane of a facet; tangent to every
// point of the facet plane.
inline SupportingHyperplane facet_hyperplane(const FacetId& f) {
  const double k = 1.0 / std::sqrt(2.0);
  return {k, {-k * f.signs[0], -k * f.signs[1], -k * f.signs[2]}};
}

// One-parameter hyperplane family at an edge: x_phi has -b along both edge
// axes (signed toward the vertices), c along the free axis, b = sqrt((2-c^2)/3).
inline SupportingHyperplane edge_hyperplane(const EdgeId& e, double c) {
  constexpr double kCMax = 0.70710678118654752440;
  if (std::abs(c) > kCMax + 1e-12)
    throw InvalidInput("edge_hyperplane: |c| > 1/sqrt(2) is not a supporting hyperplane");
  const double b = std::sqrt((2.0 - c * c) / 3.0);
  SupportingHyperplane h;
  h.phi0 = b;
  h.x_phi[e.a.axis()] = -b * e.a.sign();
  h.x_phi[e.b.axis()] = -b * e.b.sign();
  h.x_phi[e.free_axis()] = c;
  return h;
}

// ---------------------------------------------------------------------------
// The 24 rotations of the octahedron (single-qubit Clifford group mod phases).

using Mat3 = std::array<Vec3, 3>;  // rows

inline Vec3 rotate(const Mat3& m, const Vec3& v) { return {dot(m[0], v), dot(m[1], v), dot(m[2], v)}; }

inline const std::vector<Mat3>& octahedral_rotations() {
  static const std::vector<Mat3> rots = [] {
    std::vector<Mat3> out;
    const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (const auto& p : perms)
      for (int s = 0; s < 8; ++s) {
        Mat3 m{};
        for (int i = 0; i < 3; ++i) m[i][p[i]] = (s >> i) & 1 ? -1.0 : 1.0;
        const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if (det > 0) out.push_back(m);
      }
    return out;
  }();
  return rots;
}

}  // namespace relmagic
