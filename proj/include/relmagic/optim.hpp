#pragma once

// Relative entropy of magic R(rho) = min over the stabilizer polytope of
// S(rho || sigma), by conditional gradient over the enumerated vertices.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "relmagic/bloch.hpp"
#include "relmagic/errors.hpp"
#include "relmagic/family.hpp"
#include "relmagic/qmat.hpp"
#include "relmagic/stab.hpp"

namespace relmagic {

struct OptimOptions {
  double tol = 1e-6;              // Frank-Wolfe gap, bits
  int max_iterations = 200000;
  int stall_window = 200;         // iterations without halving the gap before away steps
  bool record_history = false;
};

struct OptimResult {
  double value = 0.0;             // S(rho || sigma_star), bits
  DensityMatrix sigma_star;
  std::vector<double> weights;    // over enumerate_pure_stabilizers(n)
  int iterations = 0;
  double gap = 0.0;
  bool away_steps_used = false;
  std::vector<double> objective_history;  // -Tr(rho log2 sigma) per iteration, if recorded
};

namespace detail {

// Rank floor for iterates; steps that would go below it are damped.
inline constexpr double kRankFloor = 1e-12;

struct LogState {
  EigenSystem es;
  bool full_rank = false;
};

inline LogState eig_state(const Matrix& sigma) {
  LogState s{hermitian_eig(sigma), false};
  s.full_rank = s.es.eigenvalues.back() >= kRankFloor;
  return s;
}

// f(sigma) = -Tr(rho log2 sigma).
inline double cross_entropy(const Matrix& rho, const EigenSystem& es) {
  double f = 0.0;
  for (std::size_t k = 0; k < es.eigenvalues.size(); ++k)
    f -= expectation(rho, es.vector(k)) * std::log2(es.eigenvalues[k]);
  return f;
}

// Gradient of f: Daleckii-Krein form, (U^dag rho U) divided entrywise by L(sigma).
inline Matrix cross_entropy_gradient(const Matrix& rho, const EigenSystem& es) {
  const Matrix& u = es.basis;
  const Matrix l = divided_log_from_eigenvalues(es.eigenvalues);
  Matrix g = hadamard_divide(u.adjoint() * rho * u, l);
  g *= -1.0 / std::numbers::ln2;
  return u * g * u.adjoint();
}

// Minimizer of the convex f(sigma + gamma d) on [0, gamma_max], by bisection on
// the directional derivative.
inline double line_search(const Matrix& rho, const Matrix& sigma, const Matrix& d, double gamma_max) {
  auto slope = [&](double gamma) -> std::optional<double> {
    const Matrix trial = sigma + d * cplx(gamma);
    const auto st = eig_state(trial);
    if (!st.full_rank) return std::nullopt;
    return trace_product(cross_entropy_gradient(rho, st.es), d);
  };
  if (const auto s = slope(gamma_max); s && *s <= 0.0) return gamma_max;
  double lo = 0.0, hi = gamma_max;
  for (int i = 0; i < 60 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    const auto s = slope(mid);
    if (!s || *s > 0.0) hi = mid;
    else lo = mid;
  }
  return lo;
}

}  // namespace detail

inline OptimResult relative_entropy_of_magic(const DensityMatrix& rho, const OptimOptions& opt) {
  if (opt.tol < 1e-10 || opt.tol > 1e-3) throw InvalidInput("relative_entropy_of_magic: tol must be in [1e-10, 1e-3]");
  const int n = rho.qubits();
  const auto& verts = enumerate_pure_stabilizers(n);
  const std::size_t m = verts.size();
  const Matrix& r = rho.matrix();

  OptimResult res;
  std::vector<double> w(m, 1.0 / static_cast<double>(m));
  auto assemble = [&] {
    Matrix s(rho.dim());
    for (std::size_t j = 0; j < m; ++j)
      if (w[j] > 0.0) s += verts[j].projector.matrix() * cplx(w[j]);
    return s;
  };
  Matrix sigma = assemble();

  bool away = false;
  double mark_gap = std::numeric_limits<double>::infinity();
  int mark_iter = 0;
  std::vector<double> scores(m);
  double gap = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    const auto st = detail::eig_state(sigma);
    if (opt.record_history) res.objective_history.push_back(detail::cross_entropy(r, st.es));
    const Matrix grad = detail::cross_entropy_gradient(r, st.es);
    double at_sigma = 0.0;
    std::size_t fw = 0;
    for (std::size_t j = 0; j < m; ++j) {
      scores[j] = expectation(grad, verts[j].amplitudes);
      at_sigma += w[j] * scores[j];
      if (scores[j] < scores[fw]) fw = j;
    }
    gap = at_sigma - scores[fw];
    if (gap <= opt.tol) break;

    if (!away) {
      if (gap < 0.5 * mark_gap) {
        mark_gap = gap;
        mark_iter = it;
      } else if (it - mark_iter >= opt.stall_window) {
        away = true;
        res.away_steps_used = true;
      }
    }

    bool take_away = false;
    std::size_t aw = 0;
    if (away) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < m; ++j)
        if (w[j] > 0.0 && scores[j] > best) {
          best = scores[j];
          aw = j;
        }
      take_away = best - at_sigma > gap && w[aw] < 1.0;
    }

    if (take_away) {
      const double gamma_max = w[aw] / (1.0 - w[aw]);
      const Matrix d = sigma - verts[aw].projector.matrix();
      const double gamma = detail::line_search(r, sigma, d, gamma_max);
      for (auto& x : w) x *= 1.0 + gamma;
      w[aw] = gamma >= gamma_max ? 0.0 : w[aw] - gamma;
    } else {
      const Matrix d = verts[fw].projector.matrix() - sigma;
      const double gamma = detail::line_search(r, sigma, d, 1.0);
      for (auto& x : w) x *= 1.0 - gamma;
      w[fw] += gamma;
    }
    double total = 0.0;
    for (auto& x : w) {
      if (x < 1e-300) x = 0.0;
      total += x;
    }
    for (auto& x : w) x /= total;
    sigma = assemble();
  }

  res.iterations = it;
  res.gap = gap;
  res.weights = std::move(w);
  res.sigma_star = DensityMatrix(std::move(sigma));
  res.value = relative_entropy(rho, res.sigma_star);
  return res;
}

// Frank-Wolfe gap max_j Tr(grad f(sigma) (sigma - S_j)) of a candidate sigma;
// an upper bound on S(rho || sigma) - R(rho). Needs full-rank sigma.
inline double frank_wolfe_gap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidInput("frank_wolfe_gap: dimension mismatch");
  const auto st = detail::eig_state(sigma.matrix());
  if (!st.full_rank) throw InvalidInput("frank_wolfe_gap: sigma is rank deficient");
  const Matrix grad = detail::cross_entropy_gradient(rho.matrix(), st.es);
  const double at_sigma = trace_product(grad, sigma.matrix());
  double gap = 0.0;
  for (const auto& v : enumerate_pure_stabilizers(rho.qubits()))
    gap = std::max(gap, at_sigma - expectation(grad, v.amplitudes));
  return gap;
}

inline OptimResult relative_entropy_of_magic(const DensityMatrix& rho, double tol) {
  OptimOptions opt;
  opt.tol = tol;
  return relative_entropy_of_magic(rho, opt);
}

// ---------------------------------------------------------------------------
// Single-qubit fast path.

struct ClosestStabilizer1q {
  double value = 0.0;  // bits
  BlochVector sigma;
};

namespace detail {

// S(rho || sigma) in nats for Bloch vectors y (rho) and x (sigma), |x| < 1.
struct BlochRelEntropy {
  Vec3 y;
  double neg_entropy;  // Tr(rho ln rho)

  explicit BlochRelEntropy(const Vec3& rho) : y(rho) {
    const double ry = std::min(norm(rho), 1.0);
    neg_entropy = 0.0;
    for (double p : {0.5 * (1 + ry), 0.5 * (1 - ry)})
      if (p > 0.0) neg_entropy += p * std::log(p);
  }

  double value(const Vec3& x) const {
    const double r = norm(x);
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    const double k = r < 1e-8 ? 1.0 : std::atanh(r) / r;
    return neg_entropy - 0.5 * std::log((1.0 - r * r) / 4.0) - k * dot(x, y);
  }

  Vec3 gradient(const Vec3& x) const {
    const double r = norm(x);
    const double r2 = r * r;
    const double k = r < 1e-8 ? 1.0 : std::atanh(r) / r;
    const double dk = r < 1e-8 ? 0.0 : (r / (1.0 - r2) - std::atanh(r)) / r2;  // k'(r)
    const Vec3 a = (1.0 / (1.0 - r2)) * x;
    const Vec3 b = (r < 1e-8 ? 0.0 : dk * dot(x, y) / r) * x + k * y;
    return a - b;
  }
};

// Minimize over the segment from vertex p to vertex q (open ends).
inline std::pair<double, Vec3> minimize_on_edge(const BlochRelEntropy& f, const Vec3& p, const Vec3& q) {
  const Vec3 d = q - p;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double s = dot(f.gradient(p + mid * d), d);
    if (s > 0.0) hi = mid;
    else lo = mid;
  }
  const Vec3 x = p + (0.5 * (lo + hi)) * d;
  return {f.value(x), x};
}

}  // namespace detail

// Closest stabilizer state of a single qubit. Outside states are mapped into
// the (+++) octant (the problem is symmetric under coordinate sign flips), then
// the facet plane is searched by damped Newton iterations seeded by the
// inverse map; if the plane minimizer leaves the triangle the edges are searched.
inline ClosestStabilizer1q closest_stabilizer_1q(const BlochVector& rho) {
  if (octahedron_membership(rho) != Membership::outside) return {0.0, rho};

  std::array<int, 3> signs{};
  Vec3 y{};
  for (int i = 0; i < 3; ++i) {
    signs[i] = rho.x[i] < 0.0 ? -1 : 1;
    y[i] = std::abs(rho.x[i]);
  }
  const detail::BlochRelEntropy f(y);

  // Seed: fixed point of the inverse map with the angle of the current guess.
  Vec3 x{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  for (int i = 0; i < 50; ++i) {
    try {
      const Vec3 next = closest_stabilizer_from_magic(BlochVector(y), inclination_angle(norm(x))).x;
      if (distance(next, x) < 1e-15) break;
      x = next;
    } catch (const InvalidInput&) {
      break;
    }
  }
  if (!(norm(x) < 1.0)) x = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  // Newton in plane coordinates (u, v) around the centroid.
  const Vec3 e1{M_SQRT1_2, -M_SQRT1_2, 0.0};
  const Vec3 e2{1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0)};
  auto plane_grad = [&](const Vec3& p) {
    const Vec3 g = f.gradient(p);
    return std::array<double, 2>{dot(g, e1), dot(g, e2)};
  };
  for (int it = 0; it < 100; ++it) {
    const auto g = plane_grad(x);
    if (std::hypot(g[0], g[1]) < 1e-14) break;
    const double h = 1e-6;
    const auto gu = plane_grad(x + h * e1), gv = plane_grad(x + h * e2);
    const double huu = (gu[0] - g[0]) / h, huv = 0.5 * ((gu[1] - g[1]) + (gv[0] - g[0])) / h, hvv = (gv[1] - g[1]) / h;
    const double det = huu * hvv - huv * huv;
    std::array<double, 2> step{-g[0], -g[1]};
    if (det > 0.0 && huu > 0.0) step = {-(hvv * g[0] - huv * g[1]) / det, -(huu * g[1] - huv * g[0]) / det};
    const double f0 = f.value(x);
    double lambda = 1.0;
    Vec3 trial = x + lambda * step[0] * e1 + lambda * step[1] * e2;
    while (!(f.value(trial) <= f0) && lambda > 1e-12) {
      lambda *= 0.5;
      trial = x + lambda * step[0] * e1 + lambda * step[1] * e2;
    }
    if (lambda <= 1e-12) break;
    x = trial;
  }

  const double ln2 = std::numbers::ln2;
  const bool inside = x[0] >= -1e-13 && x[1] >= -1e-13 && x[2] >= -1e-13;
  double best = inside ? f.value(x) : std::numeric_limits<double>::infinity();
  if (!inside) {
    const std::array<Vec3, 3> v{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        const auto [val, p] = detail::minimize_on_edge(f, v[a], v[b]);
        if (val < best) {
          best = val;
          x = p;
        }
      }
  }
  for (int i = 0; i < 3; ++i) x[i] = signs[i] * std::max(x[i], 0.0);
  return {best / ln2, BlochVector(x)};
}

}  // namespace relmagic
