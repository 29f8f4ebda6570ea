#pragma once

// Nonadditivity witnesses for tensor products of single-qubit magic states.
//
// If R were additive on rho = (x)_i rho_i, then sigma = (x)_i sigma_i would be
// closest to rho and the reverse map would force an n-qubit supporting
// hyperplane Phi = PhiTilde + chi at sigma. A product stabilizer state sigma'
// with Tr(Phi sigma') < 0 shows that Phi supports nothing, hence
// R(rho) < sum_i R(rho_i).
//
// All n-qubit matrices here live in the product eigenbasis (x)_i U_i of sigma,
// site 0 being the most significant tensor factor, and each U_i ordering the
// larger eigenvalue (1 + r_i)/2 first.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relmagic/bloch.hpp"
#include "relmagic/errors.hpp"
#include "relmagic/family.hpp"
#include "relmagic/optim.hpp"
#include "relmagic/qmat.hpp"
#include "relmagic/stab.hpp"

namespace relmagic {

inline constexpr double kCommuteTol = 1e-10;

struct RayComponent {
  DensityMatrix rho;
  BlochVector sigma;
  SupportingHyperplane phi;
  double t = 0.0;
  bool commuting = false;
};

inline bool classify_commuting(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return max_abs(commutator(rho.matrix(), sigma.matrix())) <= kCommuteTol;
}

// Builds rho = rho(sigma, phi, t) by the matrix route and cross-checks it
// against the Bloch form; the commuting flag is taken from [rho, sigma] and
// must agree with [phi, sigma].
inline RayComponent make_component(const BlochVector& sigma, const SupportingHyperplane& phi, double t) {
  if (!(t > 0.0)) throw InvalidInput("make_component: t must be positive");
  const double tm = t_max(sigma, phi);
  if (t > tm * (1.0 + 1e-12)) throw InvalidInput("make_component: t exceeds t_max");
  const DensityMatrix s = density_from_bloch(sigma);
  RayComponent c{magic_from_stabilizer(s, phi.matrix(), t), sigma, phi, t, false};
  const BlochVector via_bloch = magic_bloch(sigma, phi, t);
  if (max_abs_diff(c.rho.matrix(), density_from_bloch(via_bloch).matrix()) > 1e-10)
    throw ConsistencyError("make_component: matrix and Bloch forms of the reverse map disagree");
  c.commuting = classify_commuting(c.rho, s);
  const double comm_phi = max_abs(commutator(phi.matrix(), s.matrix()));
  const double comm_rho = max_abs(commutator(c.rho.matrix(), s.matrix()));
  // |[rho, sigma]| = t g_r |[phi, sigma]|
  if (c.commuting != (comm_phi <= kCommuteTol) &&
      std::abs(comm_rho - t * g_factor(sigma.r()) * comm_phi) > 1e-9)
    throw ConsistencyError("make_component: [rho, sigma] and [phi, sigma] disagree");
  return c;
}

// Ray component at a fraction of t_max.
inline RayComponent make_component_fraction(const BlochVector& sigma, const SupportingHyperplane& phi, double frac) {
  if (!(frac > 0.0 && frac <= 1.0)) throw InvalidInput("make_component_fraction: fraction must be in (0, 1]");
  return make_component(sigma, phi, frac * t_max(sigma, phi));
}

// ---------------------------------------------------------------------------
// gamma coefficients

// Closed forms for the two-site ratios L(s1)_12 L(s2)_12 / L(s1 (x) s2)_jl on
// the anti-diagonal: gamma_plus for (j, l) = (00, 11), gamma_minus for (01, 10).
// The anti-diagonal entries of Delta are 1 - gamma.
inline std::pair<double, double> gamma_pm(double r1, double r2) {
  for (double r : {r1, r2})
    if (!(r > 0.0 && r < 1.0)) throw InvalidInput("gamma_pm: radii must lie in (0, 1)");
  const double h1 = 2.0 * std::atanh(r1), h2 = 2.0 * std::atanh(r2);
  const double plus = 2.0 * r1 * r2 / (r1 + r2) * (h1 + h2) / (h1 * h2);
  double minus;
  if (std::abs(r1 - r2) <= 1e-12) {
    minus = r1 * r1 / (1.0 - r1 * r1) * 4.0 / (h1 * h1);
  } else {
    // h1 - h2 = 2 atanh((r1 - r2) / (1 - r1 r2)) avoids cancellation for r1 ~ r2.
    const double dh = 2.0 * std::atanh((r1 - r2) / (1.0 - r1 * r2));
    minus = 2.0 * r1 * r2 / (r1 - r2) * dh / (h1 * h2);
  }
  return {plus, minus};
}

// ---------------------------------------------------------------------------
// Hyperplane reconstruction

// a_m coefficients of one anti-diagonal block A^(S): sites in ascending order,
// bit k of the index m (most significant first) belongs to sites[k].
struct AntiDiagonalBlock {
  std::vector<int> sites;
  std::vector<double> a;
};

struct SiteData {
  Vec3 sigma_dir;               // x_sigma / r_sigma
  std::array<double, 2> lambda; // descending
  Matrix l;                     // L(sigma_i)
  Matrix phi;                   // t_i phi_i in sigma_i's eigenbasis
  Vec3 c0, c1;
};

struct HyperplaneNQ {
  int qubits = 0;
  std::vector<RayComponent> components;
  std::vector<SiteData> sites;
  Matrix basis;                     // (x)_i U_i
  std::vector<double> eigenvalues;  // of sigma, in basis order
  Matrix phi, phi_tilde, chi, delta;
  std::vector<AntiDiagonalBlock> blocks;
  std::optional<std::pair<double, double>> gammas;  // (gamma+, gamma-) of sites 0, 1

  Matrix phi_computational() const { return basis * phi * basis.adjoint(); }
  Matrix to_eigenbasis(const Matrix& m) const { return basis.adjoint() * m * basis; }
};

namespace detail {

inline std::size_t bit(std::size_t index, int site, int n) { return (index >> (n - 1 - site)) & 1U; }

inline double log_mean(double a, double b) {
  const std::array<double, 2> ab{a, b};
  return divided_log_from_eigenvalues(ab)(0, 1).real();
}

// 1 - prod_{p in S} L_p[k_p, !k_p] / logmean(lambda^S_k, lambda^S_!k) for the
// reduced index k over the sites in S.
inline double anti_diagonal_entry(const std::vector<SiteData>& sites, const std::vector<int>& subset, std::size_t k) {
  const int s = static_cast<int>(subset.size());
  double num = 1.0, lam = 1.0, lam_bar = 1.0;
  for (int q = 0; q < s; ++q) {
    const std::size_t kq = bit(k, q, s);
    const SiteData& site = sites[subset[q]];
    num *= site.l(kq, 1 - kq).real();
    lam *= site.lambda[kq];
    lam_bar *= site.lambda[1 - kq];
  }
  return 1.0 - num / log_mean(lam, lam_bar);
}

inline int parity(std::size_t x) { return __builtin_popcountll(x) & 1; }

}  // namespace detail

inline HyperplaneNQ reconstruct_hyperplane(std::span<const RayComponent> components) {
  const int n = static_cast<int>(components.size());
  if (n < 2 || n > kMaxStabilizerQubits) throw InvalidInput("reconstruct_hyperplane: need 2 or 3 components");

  HyperplaneNQ h;
  h.qubits = n;
  h.components.assign(components.begin(), components.end());
  std::vector<Matrix> us, ls, one_minus_phi, sigmas, rhos;
  for (const auto& c : components) {
    if (octahedron_membership(c.sigma) != Membership::boundary)
      throw InvalidInput("reconstruct_hyperplane: sigma must lie on the octahedron boundary");
    const DensityMatrix s = density_from_bloch(c.sigma);
    const auto dl = divided_log(s);
    SiteData site;
    site.sigma_dir = (1.0 / c.sigma.r()) * c.sigma.x;
    site.lambda = {dl.sigma_eig.eigenvalues[0], dl.sigma_eig.eigenvalues[1]};
    site.l = dl.matrix;
    site.phi = dl.sigma_eig.basis.adjoint() * c.phi.matrix() * dl.sigma_eig.basis * cplx(c.t);
    site.c1 = cross(site.sigma_dir, c.phi.x_phi);
    site.c0 = cross(site.c1, site.sigma_dir);
    h.sites.push_back(site);
    us.push_back(dl.sigma_eig.basis);
    ls.push_back(dl.matrix);
    one_minus_phi.push_back(Matrix::identity(2) - site.phi);
    sigmas.push_back(s.matrix());
    rhos.push_back(c.rho.matrix());
  }

  const std::size_t dim = std::size_t{1} << n;
  h.basis = tensor(us);
  h.eigenvalues.assign(dim, 1.0);
  for (std::size_t j = 0; j < dim; ++j)
    for (int p = 0; p < n; ++p) h.eigenvalues[j] *= h.sites[p].lambda[detail::bit(j, p, n)];
  const Matrix l_full = divided_log_from_eigenvalues(h.eigenvalues);

  // Delta from the subset decomposition: sum over |S| >= 2 of A^(S) (x) I.
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> subset;
    for (int p = 0; p < n; ++p)
      if (detail::bit(mask, p, n)) subset.push_back(p);
    if (subset.size() < 2) continue;
    const std::size_t span_s = std::size_t{1} << subset.size();
    AntiDiagonalBlock block{subset, std::vector<double>(span_s)};
    for (std::size_t m = 0; m < span_s; ++m) {
      double acc = 0.0;
      for (std::size_t k = 0; k < span_s; ++k)
        acc += (detail::parity(m & k) ? -1.0 : 1.0) * detail::anti_diagonal_entry(h.sites, subset, k);
      block.a[m] = acc / static_cast<double>(span_s);
    }
    h.blocks.push_back(std::move(block));
  }
  h.delta = Matrix(dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t l = 0; l < dim; ++l) {
      const std::size_t diff = j ^ l;
      if (__builtin_popcountll(diff) < 2) continue;
      for (const auto& b : h.blocks) {
        std::size_t bmask = 0;
        for (int p : b.sites) bmask |= std::size_t{1} << (n - 1 - p);
        if (bmask != diff) continue;
        std::size_t k = 0;  // reduced row index over the block's sites
        for (int p : b.sites) k = (k << 1) | detail::bit(j, p, n);
        double v = 0.0;
        for (std::size_t m = 0; m < b.a.size(); ++m) v += b.a[m] * (detail::parity(m & k) ? -1.0 : 1.0);
        h.delta(j, l) = v;
      }
    }

  // Direct Delta = J - (x)L_i (/) L((x)sigma_i).
  const Matrix delta_direct = Matrix::ones(dim) - hadamard_divide(tensor(ls), l_full);
  if (max_abs_diff(h.delta, delta_direct) > 1e-10)
    throw ConsistencyError("reconstruct_hyperplane: anti-diagonal Delta disagrees with J - (x)L / L((x)sigma)");

  const Matrix prod = tensor(one_minus_phi);
  h.phi_tilde = Matrix::identity(dim) - prod;
  h.chi = hadamard(prod, h.delta);
  h.phi = h.phi_tilde + h.chi;

  // Second route: invert rho = sigma - Phi (.) L(sigma) entrywise with the
  // per-site t's absorbed into Phi.
  const Matrix sigma_e = h.to_eigenbasis(tensor(sigmas));
  const Matrix rho_e = h.to_eigenbasis(tensor(rhos));
  std::vector<double> diag(dim);
  for (std::size_t j = 0; j < dim; ++j) diag[j] = sigma_e(j, j).real();
  const Matrix phi_direct = hadamard_divide(Matrix::diagonal(diag) - rho_e, divided_log_from_eigenvalues(diag));
  double dot_pd = 0.0, dot_pp = 0.0;
  for (std::size_t i = 0; i < h.phi.data().size(); ++i) {
    dot_pd += (std::conj(h.phi.data()[i]) * phi_direct.data()[i]).real();
    dot_pp += std::norm(h.phi.data()[i]);
  }
  const double scale = dot_pp > 0.0 ? dot_pd / dot_pp : 1.0;
  if (!(scale > 0.0) || max_abs_diff(phi_direct, h.phi * cplx(scale)) > 1e-9 * std::max(1.0, max_abs(h.phi)))
    throw ConsistencyError("reconstruct_hyperplane: analytic Phi and entrywise inversion disagree");

  h.gammas = gamma_pm(components[0].sigma.r(), components[1].sigma.r());
  return h;
}

// ---------------------------------------------------------------------------
// chi traces

// Tr(chi sigma') for a product sigma' given by its single-qubit Bloch vectors.
// Blocks on a subset S pair with the off-diagonal parts of sigma' on S; every
// site outside S contributes 1 - Tr(diag(t phi) sigma'), which is 1 whenever
// that factor is diagonal in sigma's eigenbasis.
inline double chi_trace(const HyperplaneNQ& h, std::span<const BlochVector> factors) {
  const int n = h.qubits;
  if (static_cast<int>(factors.size()) != n) throw InvalidInput("chi_trace: one factor per site required");
  std::vector<std::array<cplx, 2>> off(n);
  std::vector<double> keep(n);
  for (int p = 0; p < n; ++p) {
    const auto& s = h.sites[p];
    const auto& comp = h.components[p];
    const Vec3& x = factors[p].x;
    off[p][0] = 0.5 * comp.t * dot(s.c0, x);
    off[p][1] = cplx(0.0, 0.5 * comp.t * dot(s.c1, x));
    const double d = 0.5 * comp.t * (comp.phi.phi0 + dot(comp.phi.x_phi, s.sigma_dir) * dot(x, s.sigma_dir));
    keep[p] = 1.0 - d;
  }
  cplx total{};
  for (const auto& b : h.blocks) {
    const int s = static_cast<int>(b.sites.size());
    cplx block{};
    for (std::size_t m = 0; m < b.a.size(); ++m) {
      cplx term = b.a[m];
      for (int q = 0; q < s; ++q) term *= off[b.sites[q]][detail::bit(m, q, s)];
      block += term;
    }
    double outside = 1.0;
    for (int p = 0; p < n; ++p)
      if (std::find(b.sites.begin(), b.sites.end(), p) == b.sites.end()) outside *= keep[p];
    total += (s % 2 == 0 ? 1.0 : -1.0) * block * outside;
  }
  if (std::abs(total.imag()) > 1e-9) throw ConsistencyError("chi_trace: non-real result");
  return total.real();
}

// Tr(chi sigma') by matrix multiplication; valid for any n-qubit sigma'.
inline double chi_trace_direct(const HyperplaneNQ& h, const DensityMatrix& sigma_prime) {
  return trace_product(h.chi, h.to_eigenbasis(sigma_prime.matrix()));
}

// Two-site closed form (t1 t2 / 8)[(d- - d+)(c1.x1)(c1.x2) + (d+ + d-)(c0.x1)(c0.x2)]
// with d = 1 - gamma the anti-diagonal entries of Delta.
inline double chi_trace_two_site(const HyperplaneNQ& h, const BlochVector& x1, const BlochVector& x2) {
  if (h.qubits != 2) throw InvalidInput("chi_trace_two_site: two sites required");
  const double dp = 1.0 - h.gammas->first, dm = 1.0 - h.gammas->second;
  const auto& s1 = h.sites[0];
  const auto& s2 = h.sites[1];
  return h.components[0].t * h.components[1].t / 8.0 *
         ((dm - dp) * dot(s1.c1, x1.x) * dot(s2.c1, x2.x) + (dp + dm) * dot(s1.c0, x1.x) * dot(s2.c0, x2.x));
}

inline DensityMatrix product_state(std::span<const BlochVector> factors) {
  std::vector<Matrix> ms;
  for (const auto& f : factors) ms.push_back(density_from_bloch(f).matrix());
  return DensityMatrix(tensor(ms));
}

// ---------------------------------------------------------------------------
// Validation against the stabilizer polytope

struct HyperplaneCheck {
  double min_trace = 0.0;
  int argmin_label = -1;
  bool valid = false;
};

// Minimum of Tr(Phi S_j) over the pure stabilizer states; by convexity this is
// the minimum over the whole polytope.
inline HyperplaneCheck validate_hyperplane(const Matrix& phi, int n) {
  const auto& verts = enumerate_pure_stabilizers(n);
  if (phi.dim() != verts.front().amplitudes.size()) throw InvalidInput("validate_hyperplane: dimension mismatch");
  HyperplaneCheck c{std::numeric_limits<double>::infinity(), -1, false};
  for (const auto& v : verts) {
    const double tr = expectation(phi, v.amplitudes);
    if (tr < c.min_trace) {
      c.min_trace = tr;
      c.argmin_label = v.label;
    }
  }
  c.valid = c.min_trace >= -1e-10;
  return c;
}

// ---------------------------------------------------------------------------
// Violation search

enum class Verdict { violation, none_found };

inline const char* to_string(Verdict v) { return v == Verdict::violation ? "violation" : "none-found"; }

struct WitnessOptions {
  bool confirm_with_optimizer = false;
  double tol = 1e-9;
};

struct WitnessReport {
  Verdict verdict = Verdict::none_found;
  bool theorem_class = false;
  std::vector<bool> commuting;
  std::vector<BlochVector> violating_factors;  // sigma'^(i)
  DensityMatrix violating_state;
  double trace_value = 0.0;          // Tr(Phi sigma'), direct
  double chi_trace_analytic = 0.0;   // Tr(chi sigma'), subset expansion
  double beta1 = 0.0;
  int displaced_site = -1;
  int partner_site = -1;
  std::optional<HyperplaneCheck> exploratory;
  std::optional<double> optimizer_gap;  // R((x)rho_i) - sum_i R(rho_i)
  std::optional<double> joint_value;
  std::vector<double> single_values;
};

inline bool in_facet_interior(const BlochVector& b) {
  if (octahedron_membership(b) != Membership::boundary) return false;
  return std::holds_alternative<FacetPoint>(classify_boundary(b));
}

namespace detail {

// Largest beta >= 0 keeping x + beta d inside the facet triangle.
inline double facet_step_limit(const FacetId& f, const Vec3& x, const Vec3& d) {
  double beta = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double xi = f.signs[i] * x[i], di = f.signs[i] * d[i];
    if (di < -1e-15) beta = std::min(beta, -xi / di);
  }
  return beta;
}

}  // namespace detail

inline double optimizer_gap(std::span<const RayComponent> components, double tol, WitnessReport* report = nullptr) {
  std::vector<Matrix> rhos;
  double sum = 0.0;
  std::vector<double> singles;
  for (const auto& c : components) {
    rhos.push_back(c.rho.matrix());
    singles.push_back(rel_entropy_closed_form(c.sigma, c.phi, c.t));
    sum += singles.back();
  }
  const double joint = relative_entropy_of_magic(DensityMatrix(tensor(rhos)), tol).value;
  if (report) {
    report->joint_value = joint;
    report->single_values = singles;
  }
  return joint - sum;
}

// Follows the nonadditivity construction: displace one non-commuting facet
// factor inside its facet and move a second non-commuting factor to a vertex
// of its tangent face, so that PhiTilde drops out and Tr(chi sigma') < 0.
inline WitnessReport find_violation(std::span<const RayComponent> components, const WitnessOptions& opt = {}) {
  const int n = static_cast<int>(components.size());
  WitnessReport rep;
  std::vector<int> noncommuting;
  for (int i = 0; i < n; ++i) {
    rep.commuting.push_back(components[i].commuting);
    if (!components[i].commuting) noncommuting.push_back(i);
  }
  int facet_site = -1;
  for (int i : noncommuting)
    if (in_facet_interior(components[i].sigma)) {
      facet_site = i;
      break;
    }
  rep.theorem_class = noncommuting.size() >= 2 && facet_site >= 0;

  const HyperplaneNQ h = reconstruct_hyperplane(components);
  const Matrix phi_comp = h.phi_computational();
  for (const auto& c : components) rep.violating_factors.push_back(c.sigma);

  if (rep.theorem_class) {
    const auto& s1 = h.sites[facet_site];
    const auto& c1 = components[facet_site];
    const FacetId facet = std::get<FacetPoint>(classify_boundary(c1.sigma)).facet;
    const Vec3 normal = facet.normal();
    double best = 0.0;
    for (int partner : noncommuting) {
      if (partner == facet_site) continue;
      const auto& s2 = h.sites[partner];
      const auto& c2 = components[partner];
      const auto [gp, gm] = gamma_pm(c1.sigma.r(), c2.sigma.r());
      const double dp = 1.0 - gp, dm = 1.0 - gm;
      for (const auto& v : all_vertices()) {
        const Vec3 s = v.bloch();
        if (c2.phi.trace_with(s) > 1e-10) continue;  // not on the tangent face
        const Vec3 g = ((dm - dp) * dot(s2.c1, s)) * s1.c1 + ((dp + dm) * dot(s2.c0, s)) * s1.c0;
        const Vec3 g_in = g - dot(g, normal) * normal;
        const double len = norm(g_in);
        if (len < 1e-14) continue;
        const Vec3 d = (-1.0 / len) * g_in;
        const double beta = detail::facet_step_limit(facet, c1.sigma.x, d);
        const double predicted = c1.t * c2.t / 8.0 * beta * len;
        if (predicted > best) {
          best = predicted;
          rep.displaced_site = facet_site;
          rep.partner_site = partner;
          rep.beta1 = beta;
          rep.violating_factors = {};
          for (const auto& c : components) rep.violating_factors.push_back(c.sigma);
          Vec3 moved = c1.sigma.x + beta * d;
          if (norm1(moved) > 1.0) moved = (1.0 / norm1(moved)) * moved;
          rep.violating_factors[facet_site] = BlochVector(moved);
          rep.violating_factors[partner] = BlochVector(s);
        }
      }
    }
  }

  rep.violating_state = product_state(rep.violating_factors);
  rep.trace_value = trace_product(phi_comp, rep.violating_state.matrix());
  rep.chi_trace_analytic = chi_trace(h, rep.violating_factors);
  const double phi_tilde_part = trace_product(h.phi_tilde, h.to_eigenbasis(rep.violating_state.matrix()));
  if (std::abs(rep.trace_value - (phi_tilde_part + rep.chi_trace_analytic)) > 1e-9)
    throw ConsistencyError("find_violation: analytic and direct traces of Phi disagree");
  rep.verdict = rep.theorem_class && rep.trace_value < -1e-9 ? Verdict::violation : Verdict::none_found;
  if (!rep.theorem_class) rep.exploratory = validate_hyperplane(phi_comp, n);
  if (opt.confirm_with_optimizer) rep.optimizer_gap = optimizer_gap(components, opt.tol, &rep);
  return rep;
}

// ---------------------------------------------------------------------------
// Edge-edge scan

struct EdgeSearchReport {
  int resolution = 0;
  int cells = 0;            // hyperplane pairs examined
  int violating_cells = 0;  // with min vertex trace < -1e-9
  double best_min = -std::numeric_limits<double>::infinity();
  double best_c1 = 0.0, best_c2 = 0.0;
  bool supports_conjecture = false;
};

// Scans the edge hyperplane families (c1, c2) on a grid over [-1/sqrt 2, 1/sqrt 2]^2,
// keeping each component's sigma and its t / t_max, and reports the largest
// minimum vertex trace of the reconstructed Phi.
inline EdgeSearchReport edge_edge_search(const RayComponent& a, const RayComponent& b, int resolution) {
  if (resolution < 2) throw InvalidInput("edge_edge_search: resolution must be at least 2");
  std::array<const RayComponent*, 2> comps{&a, &b};
  std::array<EdgeId, 2> edges;
  std::array<double, 2> frac{};
  for (int i = 0; i < 2; ++i) {
    const auto& c = *comps[i];
    if (octahedron_membership(c.sigma) != Membership::boundary)
      throw InvalidInput("edge_edge_search: sigma must lie on the boundary");
    const auto where = classify_boundary(c.sigma);
    const auto* ep = std::get_if<EdgePoint>(&where);
    if (!ep) throw InvalidInput("edge_edge_search: both sigma must lie in edge interiors");
    if (c.commuting) throw InvalidInput("edge_edge_search: commuting components are outside the scan's scope");
    edges[i] = ep->edge;
    frac[i] = c.t / t_max(c.sigma, c.phi);
  }

  EdgeSearchReport rep;
  rep.resolution = resolution;
  const double c_max = 1.0 / std::sqrt(2.0);
  auto grid = [&](int k) { return -c_max + 2.0 * c_max * k / (resolution - 1); };
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const std::array<double, 2> cs{grid(i), grid(j)};
      std::array<RayComponent, 2> rays;
      bool skip = false;
      for (int k = 0; k < 2; ++k) {
        rays[k] = make_component_fraction(comps[k]->sigma, edge_hyperplane(edges[k], cs[k]), std::min(frac[k], 1.0));
        skip = skip || rays[k].commuting;
      }
      if (skip) continue;
      const auto h = reconstruct_hyperplane(rays);
      const auto check = validate_hyperplane(h.phi_computational(), 2);
      ++rep.cells;
      if (check.min_trace < -1e-9) ++rep.violating_cells;
      if (check.min_trace > rep.best_min) {
        rep.best_min = check.min_trace;
        rep.best_c1 = cs[0];
        rep.best_c2 = cs[1];
      }
    }
  }
  rep.supports_conjecture = rep.cells > 0 && rep.violating_cells == rep.cells;
  return rep;
}

}  // namespace relmagic
