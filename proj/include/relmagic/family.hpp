#pragma once

// Reverse map rho(sigma, phi, t) = sigma - t phi (.) L(sigma): every state whose
// closest stabilizer state is sigma, parameterized by a supporting hyperplane
// phi at sigma and a distance parameter t in [0, t_max].

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "relmagic/bloch.hpp"
#include "relmagic/errors.hpp"
#include "relmagic/qmat.hpp"

namespace relmagic {

// L(sigma) in sigma's eigenbasis, together with that eigenbasis.
struct DividedLog {
  Matrix matrix;
  EigenSystem sigma_eig;
};

// Entrywise inverse of the divided differences of ln at the given eigenvalues.
inline Matrix divided_log_from_eigenvalues(std::span<const double> lam) {
  Matrix l(lam.size());
  for (std::size_t k = 0; k < lam.size(); ++k)
    for (std::size_t j = 0; j < lam.size(); ++j) {
      const double a = std::max(lam[k], lam[j]), b = std::min(lam[k], lam[j]);
      if (a - b <= 1e-12) {
        l(k, j) = lam[k];
      } else {
        // (a - b) / (ln a - ln b), written to stay accurate when a ~ b
        l(k, j) = (a - b) / std::log1p((a - b) / b);
      }
    }
  return l;
}

inline DividedLog divided_log(const DensityMatrix& sigma) {
  auto es = hermitian_eig(sigma.matrix());
  if (es.eigenvalues.back() < 1e-10)
    throw InvalidInput("divided_log: sigma is rank deficient (relative entropy would be infinite)");
  return {divided_log_from_eigenvalues(es.eigenvalues), std::move(es)};
}

// Matrix route: evaluate the reverse map in sigma's eigenbasis and rotate back.
inline DensityMatrix magic_from_stabilizer(const DensityMatrix& sigma, const Matrix& phi, double t) {
  if (phi.dim() != sigma.dim()) throw InvalidInput("magic_from_stabilizer: dimension mismatch");
  if (!is_hermitian(phi, 1e-10)) throw InvalidInput("magic_from_stabilizer: phi is not Hermitian");
  if (t < 0.0) throw InvalidInput("magic_from_stabilizer: t must be non-negative");
  if (std::abs(trace_product(phi, sigma.matrix())) > 1e-10)
    throw InvalidInput("magic_from_stabilizer: Tr(phi sigma) != 0, phi is not tangent at sigma");

  const auto dl = divided_log(sigma);
  const Matrix& u = dl.sigma_eig.basis;
  const Matrix phi_eig = u.adjoint() * phi * u;
  Matrix rho_eig = Matrix::diagonal(dl.sigma_eig.eigenvalues) - hadamard(phi_eig, dl.matrix) * cplx(t);
  Matrix rho = u * rho_eig * u.adjoint();
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = i; j < rho.dim(); ++j) {
      const cplx v = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      rho(i, j) = v;
      rho(j, i) = std::conj(v);
    }

  auto es = hermitian_eig(rho);
  if (es.eigenvalues.back() < -1e-10)
    throw InvalidInput("magic_from_stabilizer: t exceeds t_max (negative eigenvalue " +
                       std::to_string(es.eigenvalues.back()) + ")");
  if (es.eigenvalues.back() < 0.0) {
    for (auto& l : es.eigenvalues) l = std::max(l, 0.0);
    rho = es.reconstruct();
  }
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix(std::move(rho));
}

// ---------------------------------------------------------------------------
// Bloch form.

// g_r = r / ln((1+r)/(1-r)); tends to 1/2 as r -> 0.
inline double g_factor(double r) {
  if (r < 1e-8) return 0.5;
  return r / (2.0 * std::atanh(r));
}

namespace detail {

inline void require_ray_inputs(const BlochVector& sigma, const SupportingHyperplane& phi, const char* who) {
  const double r = sigma.r();
  if (r < 1e-12 || r > 1.0 - 1e-10)
    throw InvalidInput(std::string(who) + ": sigma must be full rank and off the center");
  if (std::abs(phi.trace_with(sigma.x)) > 1e-10)
    throw InvalidInput(std::string(who) + ": phi is not tangent at sigma (phi0 != -x_sigma.x_phi)");
}

// d x_rho / dt: the bracket of the Bloch-form reverse map.
inline Vec3 ray_velocity(const Vec3& xs, const SupportingHyperplane& phi) {
  const double r2 = dot(xs, xs);
  const double g = g_factor(std::sqrt(r2));
  const Vec3 bracket = ((r2 - 1.0) * phi.phi0) * xs + (2.0 * g) * (phi.phi0 * xs + r2 * phi.x_phi);
  return (-1.0 / (2.0 * r2)) * bracket;
}

}  // namespace detail

// Positive root of |x_sigma + t v|^2 = 1.
inline double t_max(const BlochVector& sigma, const SupportingHyperplane& phi) {
  detail::require_ray_inputs(sigma, phi, "t_max");
  if (phi.vertex_margin() < -1e-10)
    throw InvalidInput("t_max: phi is not a supporting hyperplane of the octahedron");
  const Vec3 v = detail::ray_velocity(sigma.x, phi);
  const double a = dot(v, v);
  const double b = dot(sigma.x, v);
  const double c = dot(sigma.x, sigma.x) - 1.0;
  if (a < 1e-300) throw InvalidInput("t_max: the ray does not move (no positive root)");
  const double disc = std::sqrt(b * b - a * c);
  return b >= 0.0 ? -c / (b + disc) : (disc - b) / a;
}

// Closed-form t(r_rho = 1) exactly as printed in the reference derivation. It
// disagrees with t_max() by a factor 2 r_sigma^2 and is kept only so the
// discrepancy can be reported.
inline double t_max_paper_verbatim(const BlochVector& sigma, const SupportingHyperplane& phi) {
  detail::require_ray_inputs(sigma, phi, "t_max_paper_verbatim");
  const double r2 = dot(sigma.x, sigma.x);
  const double g = g_factor(std::sqrt(r2));
  const double p0 = phi.phi0;
  const double rphi2 = dot(phi.x_phi, phi.x_phi);
  const double h = (r2 - 1.0) * (r2 - 1.0) * p0 * p0 + 4.0 * g * g * (r2 * rphi2 - p0 * p0);
  const double inner = p0 * p0 - h * (r2 - 1.0) / (r2 * (r2 - 1.0) * (r2 - 1.0));
  return (r2 - 1.0) / h * (p0 - std::sqrt(inner));
}

inline BlochVector magic_bloch(const BlochVector& sigma, const SupportingHyperplane& phi, double t) {
  detail::require_ray_inputs(sigma, phi, "magic_bloch");
  if (t < 0.0) throw InvalidInput("magic_bloch: t must be non-negative");
  const double tm = t_max(sigma, phi);
  if (t > tm * (1.0 + 1e-12) + 1e-14) throw InvalidInput("magic_bloch: t exceeds t_max");
  Vec3 x = sigma.x + t * detail::ray_velocity(sigma.x, phi);
  const double r = norm(x);
  if (r > 1.0) x = (1.0 / r) * x;
  return BlochVector(x);
}

// Relative entropy S(rho(sigma, phi, t) || sigma) in bits from the Bloch form;
// the pure branch applies when the ray has reached the sphere.
inline double rel_entropy_closed_form(const BlochVector& sigma, const SupportingHyperplane& phi, double t) {
  const BlochVector rho = magic_bloch(sigma, phi, t);
  const double rs = sigma.r();
  const double rr = rho.r();
  const double log2_ratio_s = 2.0 * std::atanh(rs) / std::numbers::ln2;
  const double along = rs - t * phi.phi0 / (2.0 * rs) * (rs * rs - 1.0);  // x_rho . x_sigma / r_sigma
  if (std::abs(rr - 1.0) <= 1e-12) {
    return 1.0 - 0.5 * (std::log2(1.0 - rs * rs) + along * log2_ratio_s);
  }
  const double log2_ratio_r = 2.0 * std::atanh(rr) / std::numbers::ln2;
  return 0.5 * (rr * log2_ratio_r + std::log2((1.0 - rr * rr) / (1.0 - rs * rs)) - along * log2_ratio_s);
}

// Angle between a facet ray x_rho(t_max) - x_sigma and the facet normal. Only
// the Bloch length of sigma enters.
inline double inclination_angle(double r_sigma) {
  const double r_min = 1.0 / std::sqrt(3.0);
  if (r_sigma < r_min - 1e-12 || r_sigma >= 1.0)
    throw InvalidInput("inclination_angle: facet states have r_sigma in [1/sqrt(3), 1)");
  const double r2 = r_sigma * r_sigma;
  const double g = g_factor(r_sigma);
  const double k = 3.0 * r2 - 1.0;
  const double num = (1.0 - r2) + 2.0 * g * k;
  const double den = std::sqrt((1.0 - r2) * (1.0 - r2) + 4.0 * g * g * k);
  const double arg = num / (std::sqrt(3.0) * r_sigma * den);
  if (arg > 1.0 + 1e-12 || arg < -1.0 - 1e-12)
    throw InvalidInput("inclination_angle: arccos argument out of range");
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

// Inverse map for states whose closest stabilizer lies inside a facet: the
// projection of x_rho onto the facet plane, x_sigma and the centroid are
// collinear, and the ray leaves the plane at angle alpha to the normal.
inline BlochVector closest_stabilizer_from_magic(const BlochVector& rho, double alpha) {
  std::array<int, 3> signs{};
  for (int i = 0; i < 3; ++i) signs[i] = rho.x[i] < 0.0 ? -1 : 1;
  Vec3 y{};
  for (int i = 0; i < 3; ++i) y[i] = signs[i] * rho.x[i];

  const double sum = y[0] + y[1] + y[2];
  if (sum <= 1.0 + 1e-12) throw InvalidInput("closest_stabilizer_from_magic: state is not outside the facet");
  const Vec3 centroid{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const Vec3 perp = y - (sum / 3.0) * Vec3{1.0, 1.0, 1.0};
  const double perp_len = norm(perp);
  Vec3 xs = centroid;
  if (perp_len > 1e-14) {
    const double height = (sum - 1.0) / std::sqrt(3.0);
    const double b = 1.0 + std::tan(alpha) * height / perp_len;
    xs = centroid + b * perp;
  }
  for (double c : xs)
    if (c < -1e-12)
      throw InvalidInput("closest_stabilizer_from_magic: closest state on edge (barycentric coordinate < 0)");
  for (int i = 0; i < 3; ++i) xs[i] = signs[i] * std::max(xs[i], 0.0);
  return BlochVector(xs);
}

// ---------------------------------------------------------------------------
// Rays.

struct MagicRay {
  BlochVector sigma;
  SupportingHyperplane phi;
  double t_max = 0.0;
  double g_r = 0.0;
  std::optional<double> alpha;  // facet rays only
  Vec3 x_d{};                   // x_rho(t_max) - x_sigma

  BlochVector at(double t) const { return magic_bloch(sigma, phi, t); }
  BlochVector endpoint() const { return at(t_max); }
};

inline MagicRay make_ray(const BlochVector& sigma, const SupportingHyperplane& phi) {
  if (octahedron_membership(sigma) != Membership::boundary)
    throw InvalidInput("make_ray: sigma must lie on the octahedron boundary");
  const auto where = classify_boundary(sigma);
  if (std::holds_alternative<VertexPoint>(where))
    throw InvalidInput("make_ray: vertices are pure and cannot be closest stabilizer states");
  MagicRay ray{sigma, phi, t_max(sigma, phi), g_factor(sigma.r()), std::nullopt, {}};
  ray.x_d = ray.endpoint().x - sigma.x;
  if (std::holds_alternative<FacetPoint>(where)) ray.alpha = inclination_angle(sigma.r());
  return ray;
}

// Ray with the unique facet hyperplane; sigma must be inside a facet.
inline MagicRay facet_ray(const BlochVector& sigma) {
  const auto where = classify_boundary(sigma);
  const auto* fp = std::get_if<FacetPoint>(&where);
  if (!fp) throw InvalidInput("facet_ray: sigma is not in a facet interior");
  return make_ray(sigma, facet_hyperplane(fp->facet));
}

inline MagicRay edge_ray(const BlochVector& sigma, double c) {
  const auto where = classify_boundary(sigma);
  const auto* ep = std::get_if<EdgePoint>(&where);
  if (!ep) throw InvalidInput("edge_ray: sigma is not in an edge interior");
  return make_ray(sigma, edge_hyperplane(ep->edge, c));
}

// ---------------------------------------------------------------------------
// Angle model.

struct AngleSample {
  double r_sigma = 0.0;
  Vec3 x_sigma{};
  Vec3 x_rho{};
  double distance = 0.0;  // |x_rho - x_T|
  double alpha = 0.0;
};

struct AngleModel {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  double predict(double distance) const { return slope * distance + intercept; }
};

// Facet (+++) rays for r_sigma evenly spaced in [r_min, r_max], sigma on the
// median from the centroid toward s1.
inline std::vector<AngleSample> angle_sweep(double r_min, double r_max, int count) {
  const double r_lo = 1.0 / std::sqrt(3.0);
  if (count < 1 || r_min < r_lo - 1e-12 || r_max >= 1.0 || r_max < r_min)
    throw InvalidInput("angle_sweep: need count >= 1 and 1/sqrt(3) <= r_min <= r_max < 1");
  const Vec3 dir{2.0 / std::sqrt(6.0), -1.0 / std::sqrt(6.0), -1.0 / std::sqrt(6.0)};
  const Vec3 t_state{1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
  std::vector<AngleSample> out;
  for (int i = 0; i < count; ++i) {
    const double r = count == 1 ? r_min : r_min + (r_max - r_min) * i / (count - 1);
    const double u = std::sqrt(std::max((r - r_lo) * (r + r_lo), 0.0));
    const Vec3 xs = Vec3{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0} + u * dir;
    const MagicRay ray = facet_ray(BlochVector(xs));
    const Vec3 xr = ray.endpoint().x;
    out.push_back({r, xs, xr, distance(xr, t_state), *ray.alpha});
  }
  return out;
}

inline AngleModel fit_angle_model(std::span<const AngleSample> samples) {
  std::vector<double> distinct;
  for (const auto& s : samples) {
    bool found = false;
    for (double d : distinct) found = found || std::abs(d - s.distance) <= 1e-12;
    if (!found) distinct.push_back(s.distance);
  }
  if (distinct.size() < 2) throw InvalidInput("fit_angle_model: need at least two distinct distances");

  const double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& s : samples) {
    sx += s.distance;
    sy += s.alpha;
    sxx += s.distance * s.distance;
    sxy += s.distance * s.alpha;
  }
  AngleModel m;
  m.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  m.intercept = (sy - m.slope * sx) / n;
  for (const auto& s : samples) m.max_residual = std::max(m.max_residual, std::abs(s.alpha - m.predict(s.distance)));
  return m;
}

}  // namespace relmagic
