// relmagic: command-line front end emitting CSV/JSON data for the relative
// entropy of magic, its reverse-map families and the nonadditivity witness.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relmagic/relmagic.hpp"

using namespace relmagic;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<int> resolution;
  double tol = 1e-6;
  std::string out;
  std::optional<std::string> format;
  std::uint64_t seed = 1;

  int resolution_or(int fallback) const {
    const int r = resolution.value_or(fallback);
    if (r < 2) throw InvalidInput("--resolution must be at least 2");
    return r;
  }
  std::string format_or(const std::string& fallback) const { return format.value_or(fallback); }
};

// Output sink: --out file or stdout. Summaries go to stdout when data goes to a
// file, else to stderr.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& data() { return file_ ? *file_ : std::cout; }
  std::ostream& note() { return file_ ? std::cout : std::cerr; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw IoError("failed writing output file");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidInput("not a number: '" + s + "'");
  return v;
}

Vec3 parse_triple(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw InvalidInput("expected a Bloch triple x,y,z, got '" + s + "'");
  return {parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
}

// ---------------------------------------------------------------------------
// State specs

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

std::optional<Vec3> named_bloch(const std::string& name) {
  if (name == "T") return Vec3{kInvSqrt3, kInvSqrt3, kInvSqrt3};
  if (name == "H") return Vec3{M_SQRT1_2, M_SQRT1_2, 0.0};
  if (name == "Hlike") return Vec3{M_SQRT1_2, 0.0, M_SQRT1_2};
  return std::nullopt;
}

DensityMatrix parse_factor(const std::string& f) {
  if (f == "psi2q") {
    const std::vector<cplx> a{0.5, 0.5, 0.5, cplx(0.0, 0.5)};
    return DensityMatrix::pure(a);
  }
  if (auto b = named_bloch(f)) return density_from_bloch(BlochVector(*b));
  std::string body = f;
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  if (body.find(',') != std::string::npos) return density_from_bloch(BlochVector(parse_triple(body)));
  throw InvalidInput("unknown state '" + f + "' (expected T, H, Hlike, psi2q or a Bloch triple)");
}

// Factors separated by the tensor sign or '*'.
DensityMatrix parse_state(std::string spec) {
  const std::string otimes = "\xE2\x8A\x97";
  for (std::size_t p; (p = spec.find(otimes)) != std::string::npos;) spec.replace(p, otimes.size(), "*");
  const auto factors = split(spec, '*');
  if (factors.empty() || factors.front().empty()) throw InvalidInput("empty state spec");
  std::optional<DensityMatrix> rho;
  for (const auto& f : factors) {
    if (f.empty()) throw InvalidInput("empty tensor factor in state spec");
    const auto d = parse_factor(f);
    rho = rho ? tensor(*rho, d) : d;
    if (rho->qubits() > kMaxStabilizerQubits) throw InvalidInput("states on more than 3 qubits are not supported");
  }
  return *rho;
}

// ---------------------------------------------------------------------------
// magic

int cmd_magic(const RunConfig& cfg, const std::string& spec) {
  const DensityMatrix rho = parse_state(spec);
  const int n = rho.qubits();
  json j{{"schema_version", kSchemaVersion}, {"command", "magic"}, {"state", spec}, {"qubits", n}};
  std::optional<Vec3> sigma_bloch;
  Matrix sigma(rho.dim());
  if (n == 1) {
    const auto c = closest_stabilizer_1q(bloch_from_density(rho));
    const DensityMatrix s = density_from_bloch(c.sigma);
    const bool full_rank = c.sigma.r() < 1.0 - 1e-10;
    j["method"] = "analytic";
    j["value"] = c.value;
    j["gap"] = full_rank ? frank_wolfe_gap(rho, s) : 0.0;
    j["iterations"] = 0;
    sigma_bloch = c.sigma.x;
    sigma = s.matrix();
    j["sigma_bloch"] = vec_json(c.sigma.x);
    j["closest_face"] = face_name(c.sigma.x);
  } else {
    const auto r = relative_entropy_of_magic(rho, cfg.tol);
    j["method"] = "optimizer";
    j["value"] = r.value;
    j["gap"] = r.gap;
    j["iterations"] = r.iterations;
    json w = json::array();
    for (std::size_t k = 0; k < r.weights.size(); ++k)
      if (r.weights[k] > 1e-9) w.push_back({{"label", k}, {"weight", r.weights[k]}});
    j["sigma_weights"] = w;
    sigma = r.sigma_star.matrix();
  }
  json re = json::array(), im = json::array();
  for (std::size_t a = 0; a < sigma.dim(); ++a) {
    json rr = json::array(), ii = json::array();
    for (std::size_t b = 0; b < sigma.dim(); ++b) {
      rr.push_back(sigma(a, b).real());
      ii.push_back(sigma(a, b).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  j["sigma_matrix"] = {{"re", re}, {"im", im}};

  Sink sink(cfg.out);
  if (!cfg.format && cfg.out.empty()) {
    std::cout << "state    " << spec << " (" << n << " qubit" << (n > 1 ? "s" : "") << ")\n"
              << "value    " << num(j["value"].get<double>()) << " bits\n"
              << "method   " << j["method"].get<std::string>() << "\n"
              << "gap      " << num(j["gap"].get<double>()) << "\n";
    if (sigma_bloch)
      std::cout << "closest  Bloch (" << num((*sigma_bloch)[0]) << ", " << num((*sigma_bloch)[1]) << ", "
                << num((*sigma_bloch)[2]) << ") on " << j["closest_face"].get<std::string>() << "\n";
    else
      std::cout << "closest  mixture of " << j["sigma_weights"].size() << " stabilizer states\n";
    return 0;
  }
  const std::string fmt = cfg.format_or("json");
  if (fmt == "json") {
    sink.data() << j.dump(2) << "\n";
  } else {
    sink.data() << "state,qubits,method,value,gap,iterations,sigma_x1,sigma_x2,sigma_x3\n";
    sink.data() << '"' << spec << "\"," << n << ',' << j["method"].get<std::string>() << ','
                << num(j["value"].get<double>()) << ',' << num(j["gap"].get<double>()) << ','
                << j["iterations"].get<int>();
    for (int k = 0; k < 3; ++k) sink.data() << ',' << (sigma_bloch ? num((*sigma_bloch)[k]) : "");
    sink.data() << "\n";
  }
  if (!cfg.out.empty()) std::cout << "value " << num(j["value"].get<double>()) << " bits\n";
  sink.close();
  return 0;
}

// ---------------------------------------------------------------------------
// heatmap

int cmd_heatmap(const RunConfig& cfg) {
  const int res = cfg.resolution_or(48);
  if (res < 8) throw InvalidInput("heatmap: --resolution must be at least 8");
  const auto grid = facet_heatmap(res);
  const auto sum = summarize_heatmap(grid, res);
  const HeatmapSample* edge_best = nullptr;
  for (const auto& g : grid)
    if (g.face == "edge" && (!edge_best || g.value > edge_best->value)) edge_best = &g;

  json summary{{"max_value", sum.max_value},
               {"max_direction", vec_json(grid[sum.argmax].direction)},
               {"max_angle_from_t", sum.max_angle_from_t},
               {"permutation_residual", sum.permutation_residual},
               {"radial_spread", sum.radial_spread},
               {"radial_bins", sum.radial_bins}};
  if (edge_best) {
    summary["edge_max_value"] = edge_best->value;
    summary["edge_max_direction"] = vec_json(edge_best->direction);
  }

  Sink sink(cfg.out);
  const std::string fmt = cfg.format_or("csv");
  if (fmt == "json") {
    json samples = json::array();
    for (const auto& g : grid)
      samples.push_back({{"index", g.index},
                         {"direction", vec_json(g.direction)},
                         {"value", g.value},
                         {"closest_face", g.face},
                         {"sigma", vec_json(g.sigma)},
                         {"angle_from_t", g.angle_from_t}});
    sink.data() << json{{"schema_version", kSchemaVersion},
                        {"command", "heatmap"},
                        {"resolution", res},
                        {"summary", summary},
                        {"samples", samples}}
                       .dump(2)
                << "\n";
  } else {
    auto& o = sink.data();
    o << "i,j,k,x1,x2,x3,value,closest_face,sigma_x1,sigma_x2,sigma_x3,angle_from_t\n";
    for (const auto& g : grid)
      o << g.index[0] << ',' << g.index[1] << ',' << g.index[2] << ',' << num(g.direction[0]) << ','
        << num(g.direction[1]) << ',' << num(g.direction[2]) << ',' << num(g.value) << ',' << g.face << ','
        << num(g.sigma[0]) << ',' << num(g.sigma[1]) << ',' << num(g.sigma[2]) << ',' << num(g.angle_from_t)
        << "\n";
  }
  sink.note() << "heatmap: " << grid.size() << " samples, max " << num(sum.max_value) << " at "
              << num(sum.max_angle_from_t) << " rad from T";
  if (edge_best) sink.note() << ", edge-closest max " << num(edge_best->value);
  sink.note() << ", 6-fold residual " << num(sum.permutation_residual) << ", radial spread "
              << num(sum.radial_spread) << "\n";
  sink.close();
  return 0;
}

// ---------------------------------------------------------------------------
// rays

int cmd_rays(const RunConfig& cfg, const std::string& face, std::vector<double> cs, int steps, bool printed_t) {
  if (steps < 1) throw InvalidInput("rays: --steps must be at least 1");
  const int res = cfg.resolution_or(6);
  std::vector<RayPolyline> rays;
  if (face.size() == 3 && (face[0] == '+' || face[0] == '-')) {
    if (!cs.empty()) throw InvalidInput("rays: --c applies to edges only");
    rays = facet_rays(FacetId::parse(face), res, steps, printed_t);
  } else if (face.size() == 2 && face[0] == 's') {
    throw InvalidInput("rays: vertices are excluded (pure stabilizer states have no magic rays)");
  } else {
    if (cs.empty()) cs = {0.0, 1.0 / std::sqrt(8.0), M_SQRT1_2};
    rays = edge_rays(parse_edge(face), cs, res, steps, printed_t);
  }

  Sink sink(cfg.out);
  const std::string fmt = cfg.format_or("csv");
  if (fmt == "json") {
    json arr = json::array();
    for (const auto& r : rays) {
      json pts = json::array();
      for (const auto& [t, x] : r.points) pts.push_back({t, x[0], x[1], x[2]});
      json item{{"face", r.face},
                {"c", r.c},
                {"sigma", vec_json(r.ray.sigma.x)},
                {"t_max", r.ray.t_max},
                {"endpoint", vec_json(r.ray.endpoint().x)},
                {"points", pts}};
      if (r.ray.alpha) item["alpha"] = *r.ray.alpha;
      if (r.t_max_printed) item["t_max_printed"] = *r.t_max_printed;
      arr.push_back(item);
    }
    sink.data() << json{{"schema_version", kSchemaVersion}, {"command", "rays"}, {"rays", arr}}.dump(2) << "\n";
  } else {
    auto& o = sink.data();
    o << "ray,face,c,sigma_x1,sigma_x2,sigma_x3,t_max," << (printed_t ? "t_max_printed," : "") << "step,t,x1,x2,x3\n";
    for (std::size_t k = 0; k < rays.size(); ++k) {
      const auto& r = rays[k];
      for (std::size_t s = 0; s < r.points.size(); ++s) {
        const auto& [t, x] = r.points[s];
        o << k << ',' << r.face << ',' << num(r.c) << ',' << num(r.ray.sigma.x[0]) << ',' << num(r.ray.sigma.x[1])
          << ',' << num(r.ray.sigma.x[2]) << ',' << num(r.ray.t_max) << ',';
        if (printed_t) o << num(*r.t_max_printed) << ',';
        o << s << ',' << num(t) << ',' << num(x[0]) << ',' << num(x[1]) << ',' << num(x[2]) << "\n";
      }
    }
  }
  sink.note() << "rays: " << rays.size() << " polylines on " << face << "\n";
  sink.close();
  return 0;
}

// ---------------------------------------------------------------------------
// witness

RayComponent parse_component(const std::string& spec, std::mt19937_64& rng) {
  if (spec == "T") return make_component_fraction({1.0 / 3, 1.0 / 3, 1.0 / 3}, facet_hyperplane(FacetId::parse("+++")), 1.0);
  if (spec == "H") return make_component_fraction({0.5, 0.5, 0.0}, edge_hyperplane(EdgeId::make({1}, {2}), 0.0), 1.0);
  if (spec == "Hlike")
    return make_component_fraction({0.5, 0.0, 0.5}, edge_hyperplane(EdgeId::make({1}, {3}), 0.0), 1.0);
  if (spec == "random") {
    std::uniform_int_distribution<int> pick(0, 7);
    std::exponential_distribution<double> e(1.0);
    std::uniform_real_distribution<double> frac(0.2, 1.0);
    const FacetId f = all_facets()[pick(rng)];
    double w[3] = {e(rng), e(rng), e(rng)};
    const double s = w[0] + w[1] + w[2];
    Vec3 x{};
    for (int i = 0; i < 3; ++i) x[i] = f.signs[i] * (0.05 + 0.85 * w[i] / s);
    return make_component_fraction(BlochVector(x), facet_hyperplane(f), frac(rng));
  }
  const auto parts = split(spec, ':');
  if (parts.size() >= 2 && parts[0] == "facet" && parts.size() <= 3) {
    const BlochVector s(parse_triple(parts[1]));
    const auto where = classify_boundary(s);
    const auto* fp = std::get_if<FacetPoint>(&where);
    if (!fp) throw InvalidInput("component '" + spec + "': sigma is not in a facet interior");
    return make_component_fraction(s, facet_hyperplane(fp->facet), parts.size() == 3 ? parse_number(parts[2]) : 1.0);
  }
  if (parts.size() >= 3 && parts[0] == "edge" && parts.size() <= 4) {
    const BlochVector s(parse_triple(parts[1]));
    const auto where = classify_boundary(s);
    const auto* ep = std::get_if<EdgePoint>(&where);
    if (!ep) throw InvalidInput("component '" + spec + "': sigma is not in an edge interior");
    return make_component_fraction(s, edge_hyperplane(ep->edge, parse_number(parts[2])),
                                   parts.size() == 4 ? parse_number(parts[3]) : 1.0);
  }
  throw InvalidInput("unknown component '" + spec +
                     "' (expected T, H, Hlike, random, facet:x,y,z[:frac] or edge:x,y,z:c[:frac])");
}

bool on_edge_interior(const BlochVector& s) {
  return octahedron_membership(s) == Membership::boundary && std::holds_alternative<EdgePoint>(classify_boundary(s));
}

int cmd_witness(const RunConfig& cfg, const std::vector<std::string>& specs, bool confirm) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<RayComponent> cs;
  for (const auto& s : specs) cs.push_back(parse_component(s, rng));
  if (cs.size() < 2 || cs.size() > 3) throw InvalidInput("witness: need 2 or 3 components");

  const auto rep = find_violation(cs, {confirm, cfg.tol});
  json comps = json::array();
  for (std::size_t i = 0; i < cs.size(); ++i)
    comps.push_back({{"spec", specs[i]},
                     {"sigma", vec_json(cs[i].sigma.x)},
                     {"phi", {{"phi0", cs[i].phi.phi0}, {"x_phi", vec_json(cs[i].phi.x_phi)}}},
                     {"t", cs[i].t},
                     {"t_max", t_max(cs[i].sigma, cs[i].phi)},
                     {"rho_bloch", vec_json(bloch_from_density(cs[i].rho).x)},
                     {"commuting", cs[i].commuting}});
  json factors = json::array();
  for (const auto& f : rep.violating_factors) factors.push_back(vec_json(f.x));
  json j{{"schema_version", kSchemaVersion},
         {"command", "witness"},
         {"components", comps},
         {"theorem_class", rep.theorem_class},
         {"verdict", to_string(rep.verdict)},
         {"trace_value", rep.trace_value},
         {"chi_trace", rep.chi_trace_analytic},
         {"beta1", rep.beta1},
         {"displaced_site", rep.displaced_site},
         {"partner_site", rep.partner_site},
         {"violating_factors", factors}};
  if (rep.exploratory)
    j["exploratory"] = {{"min_vertex_trace", rep.exploratory->min_trace},
                        {"argmin_label", rep.exploratory->argmin_label},
                        {"valid", rep.exploratory->valid}};
  if (rep.optimizer_gap)
    j["optimizer"] = {{"joint_value", *rep.joint_value}, {"single_values", rep.single_values}, {"gap", *rep.optimizer_gap}};
  if (cs.size() == 2 && !rep.theorem_class && on_edge_interior(cs[0].sigma) && on_edge_interior(cs[1].sigma) &&
      !cs[0].commuting && !cs[1].commuting) {
    const auto es = edge_edge_search(cs[0], cs[1], cfg.resolution_or(50));
    j["edge_search"] = {{"resolution", es.resolution},       {"cells", es.cells},
                        {"violating_cells", es.violating_cells}, {"best_min_vertex_trace", es.best_min},
                        {"best_c", {es.best_c1, es.best_c2}}, {"supports_conjecture", es.supports_conjecture}};
  }

  if (cfg.format_or("json") != "json") throw InvalidInput("witness: only --format json is supported");
  Sink sink(cfg.out);
  sink.data() << j.dump(2) << "\n";
  if (!cfg.out.empty())
    std::cout << "verdict " << to_string(rep.verdict) << ", Tr(Phi sigma') = " << num(rep.trace_value) << "\n";
  sink.close();
  return 0;
}

// ---------------------------------------------------------------------------
// angle

int cmd_angle(const RunConfig& cfg, double r_max) {
  const int count = cfg.resolution_or(40);
  if (r_max < kInvSqrt3 || r_max >= 1.0) throw InvalidInput("angle: empty sweep (need 1/sqrt(3) <= --r-max < 1)");
  const auto samples = angle_sweep(kInvSqrt3, r_max, count);
  const auto fit = fit_angle_model(samples);

  Sink sink(cfg.out);
  const std::string fmt = cfg.format_or("csv");
  if (fmt == "json") {
    json arr = json::array();
    for (const auto& s : samples)
      arr.push_back({{"r_sigma", s.r_sigma},
                     {"x_sigma", vec_json(s.x_sigma)},
                     {"x_rho", vec_json(s.x_rho)},
                     {"distance", s.distance},
                     {"alpha", s.alpha}});
    sink.data() << json{{"schema_version", kSchemaVersion},
                        {"command", "angle"},
                        {"samples", arr},
                        {"fit", {{"slope", fit.slope}, {"intercept", fit.intercept}, {"max_residual", fit.max_residual}}}}
                       .dump(2)
                << "\n";
  } else {
    sink.data() << "r_sigma,distance,alpha\n";
    for (const auto& s : samples) sink.data() << num(s.r_sigma) << ',' << num(s.distance) << ',' << num(s.alpha) << "\n";
  }
  sink.note() << "fit: alpha = " << num(fit.slope) << " * distance + " << num(fit.intercept)
              << ", max residual " << num(fit.max_residual) << "\n";
  sink.close();
  return 0;
}

// ---------------------------------------------------------------------------
// enumerate

int cmd_enumerate(const RunConfig& cfg, int qubits) {
  const auto& states = enumerate_pure_stabilizers(qubits);
  Sink sink(cfg.out);
  const std::string fmt = cfg.format_or("csv");
  if (fmt == "json") {
    json arr = json::array();
    for (const auto& s : states) {
      json amps = json::array();
      for (const auto& a : s.amplitudes) amps.push_back({a.real(), a.imag()});
      json item{{"label", s.label}, {"amplitudes", amps}};
      if (qubits == 1) item["bloch"] = vec_json(bloch_from_density(s.projector).x);
      arr.push_back(item);
    }
    sink.data() << json{{"schema_version", kSchemaVersion}, {"command", "enumerate"}, {"qubits", qubits},
                        {"count", states.size()}, {"states", arr}}
                       .dump(2)
                << "\n";
  } else {
    auto& o = sink.data();
    o << "label";
    for (std::size_t k = 0; k < states.front().amplitudes.size(); ++k) o << ",a" << k << "_re,a" << k << "_im";
    o << "\n";
    for (const auto& s : states) {
      o << s.label;
      for (const auto& a : s.amplitudes) o << ',' << num(a.real()) << ',' << num(a.imag());
      o << "\n";
    }
  }
  sink.note() << "enumerate: " << states.size() << " pure stabilizer states on " << qubits << " qubit"
              << (qubits > 1 ? "s" : "") << "\n";
  sink.close();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative entropy of magic: reverse-map families, closest stabilizer states and nonadditivity witnesses"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--resolution", cfg.resolution, "Grid resolution (samples per axis, sweep length or scan size)");
  app.add_option("--tol", cfg.tol, "Optimizer tolerance on the Frank-Wolfe gap")->check(CLI::Range(1e-10, 1e-3));
  app.add_option("--out", cfg.out, "Output file (default: stdout)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "Seed for sampled components");

  std::string state;
  auto* magic = app.add_subcommand("magic", "Relative entropy of magic of a state");
  magic->add_option("--state", state, "Bloch triple x,y,z, T, H, Hlike, psi2q, or a product such as T*T")->required();

  auto* heatmap = app.add_subcommand("heatmap", "R over the pure states above facet (+++)");

  std::string face;
  std::vector<double> cs;
  int steps = 20;
  bool printed_t = false;
  auto* rays = app.add_subcommand("rays", "Polylines x_rho(t) of reverse-map rays");
  rays->add_option("--face", face, "Facet (e.g. +++) or edge (e.g. s1s3)")->required();
  rays->add_option("--c", cs, "Edge hyperplane parameters, |c| <= 1/sqrt(2)");
  rays->add_option("--steps", steps, "Points per ray minus one");
  rays->add_flag("--paper-verbatim-t", printed_t, "Add the printed closed-form t_max for comparison");

  std::string a, b, third;
  bool confirm = false;
  auto* witness = app.add_subcommand("witness", "Nonadditivity witness for a product of single-qubit magic states");
  witness->add_option("--a", a, "First component")->required();
  witness->add_option("--b", b, "Second component")->required();
  witness->add_option("--third", third, "Optional third component");
  witness->add_flag("--confirm", confirm, "Confirm with the optimizer");

  double r_max = 0.99;
  auto* angle = app.add_subcommand("angle", "Inclination angle of facet rays versus distance from T");
  angle->add_option("--r-max", r_max, "Largest r_sigma in the sweep");

  int qubits = 1;
  auto* enumerate = app.add_subcommand("enumerate", "List pure stabilizer states");
  enumerate->add_option("--qubits", qubits, "Number of qubits (1-3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*magic) return cmd_magic(cfg, state);
    if (*heatmap) return cmd_heatmap(cfg);
    if (*rays) return cmd_rays(cfg, face, cs, steps, printed_t);
    if (*witness) {
      std::vector<std::string> specs{a, b};
      if (!third.empty()) specs.push_back(third);
      return cmd_witness(cfg, specs, confirm);
    }
    if (*angle) return cmd_angle(cfg, r_max);
    if (*enumerate) return cmd_enumerate(cfg, qubits);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
