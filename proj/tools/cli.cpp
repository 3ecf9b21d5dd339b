#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "carnot/algebra_io.hpp"
#include "carnot/centralizer.hpp"
#include "carnot/dynamics/chaos.hpp"
#include "carnot/dynamics/group.hpp"
#include "carnot/dynamics/lie_poisson_system.hpp"
#include "carnot/dynamics/orbit_chart.hpp"
#include "carnot/dynamics/scaled_hamiltonian.hpp"
#include "carnot/dynamics/systems.hpp"
#include "carnot/errors.hpp"
#include "carnot/poisson.hpp"
#include "carnot/uea.hpp"
#include "output.hpp"

namespace carnot::cli {

namespace {

using nlohmann::json;
namespace dyn = carnot::dynamics;

struct Common {
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  std::string config;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output-dir", c.output_dir, "Directory for result files")->capture_default_str();
  sub->add_option("--seed", c.seed, "Seed for every random choice")->capture_default_str();
  sub->add_option("--config", c.config, "JSON file whose keys set any flag; explicit flags win");
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(std::string("bad number '") + item + "' in " + what, what);
    }
  }
  return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// ------------------------------------------------------------------ config

// Splices `--key value` pairs from the JSON file named by --config directly
// after the subcommand, so later explicit flags take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  if (args.size() < 2 || args[1].rfind("-", 0) == 0)
    throw ParseError("--config must follow a subcommand", "argv");

  std::ifstream in(*path);
  if (!in) throw ParseError("cannot open config file", *path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), *path + ": byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object", *path);

  std::vector<std::string> injected;
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!v.is_number()) throw ParseError("list entries must be numbers", *path + ": " + key);
        joined += (joined.empty() ? "" : ",") + v.dump();
      }
      injected.push_back(flag);
      injected.push_back(joined);
    } else if (value.is_string()) {
      injected.push_back(flag);
      injected.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      injected.push_back(flag);
      injected.push_back(value.dump());
    } else {
      throw ParseError("unsupported value type", *path + ": " + key);
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

json sidecar(const CLI::App* sub, const std::string& command) {
  json doc;
  doc["command"] = command;
  doc["created_at"] = utc_timestamp();
  doc["flags"] = sub->config_to_str(true, false);
  return doc;
}

// ------------------------------------------------------------------ verify

struct VerifyOptions {
  Common common;
  std::string algebra = "n4";
  int jacobi_samples = 20;
};

int cmd_verify(const VerifyOptions& o, const CLI::App* sub, std::ostream& out) {
  const AlgebraPtr alg = resolve_algebra(o.algebra);
  const auto names = dual_variable_names(*alg);
  json report;
  report["algebra"] = algebra_to_json(*alg);
  bool ok = true;

  const auto validation = validate_algebra(*alg);
  json violations = json::array();
  for (const auto& v : validation.violations) {
    violations.push_back({{"kind", std::string(to_string(v.kind))}, {"indices", v.indices}, {"message", v.message}});
    out << "violation (" << to_string(v.kind) << "): " << v.message << "\n";
  }
  report["violations"] = violations;
  ok = ok && validation.ok();
  out << "axioms: " << (validation.ok() ? "ok" : "FAILED") << "\n";

  out << "nonzero Poisson brackets of coordinate functions:\n";
  json table = json::array();
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = 0; j < alg->dim(); ++j) {
      if (i == j) continue;
      const auto b = poisson_bracket(Polynomial::variable(alg, i), Polynomial::variable(alg, j));
      if (b.is_zero()) continue;
      // Print each pair once, in the orientation with a positive leading coefficient.
      if (b.terms().rbegin()->second < 0) continue;
      out << "  {" << names[i] << ", " << names[j] << "} = " << to_string(b) << "\n";
      table.push_back({{"f", names[i]}, {"g", names[j]}, {"bracket", to_string(b)}});
    }
  report["brackets"] = table;

  const Polynomial h = subriemannian_hamiltonian(alg);
  json casimirs = json::array();
  const auto declared = declared_casimirs(alg);
  for (std::size_t i = 0; i < declared.size(); ++i) {
    const auto& c = declared[i];
    const std::string& text = alg->casimirs()[i];
    const bool central = is_casimir(c);
    const bool conserved = poisson_bracket(c, h).is_zero();
    ok = ok && central && conserved;
    out << "casimir " << text << ": " << (central ? "central" : "NOT central") << ", "
        << (conserved ? "conserved" : "NOT conserved") << "\n";
    casimirs.push_back({{"expression", text}, {"is_casimir", central}, {"commutes_with_H", conserved}});
  }
  report["casimirs"] = casimirs;

  // Jacobi identity of the Poisson bracket on random quadratic polynomials.
  std::mt19937_64 rng(o.common.seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_poly = [&] {
    Polynomial p(alg);
    for (const auto& m : monomials_up_to(alg->dim(), 2)) p.add_term(m, coeff(rng));
    return p;
  };
  int failures = 0;
  for (int s = 0; s < o.jacobi_samples; ++s) {
    const auto f = random_poly(), g = random_poly(), k = random_poly();
    const auto cyc = poisson_bracket(f, poisson_bracket(g, k)) + poisson_bracket(g, poisson_bracket(k, f)) +
                     poisson_bracket(k, poisson_bracket(f, g));
    if (!cyc.is_zero()) ++failures;
  }
  ok = ok && failures == 0;
  out << "Poisson Jacobi on " << o.jacobi_samples << " random triples: " << failures << " failures\n";
  report["jacobi"] = {{"samples", o.jacobi_samples}, {"failures", failures}};
  report["ok"] = ok;

  OutputSet files(o.common.output_dir);
  files.add_json("verify.json", report);
  json meta = sidecar(sub, "verify");
  meta["outputs"] = {"verify.json"};
  files.add_json("verify.meta.json", meta);
  files.commit();
  out << (ok ? "all checks passed" : "checks FAILED") << "\n";
  return ok ? kSuccess : kChecksFailed;
}

// -------------------------------------------------------------- centralizer

struct CentralizerCmd {
  Common common;
  std::string algebra = "n4";
  std::string mode = "poisson";
  unsigned degree = 2;
  std::optional<unsigned> max_degree;
};

int cmd_centralizer(const CentralizerCmd& o, const CLI::App* sub, std::ostream& out) {
  const AlgebraPtr alg = resolve_algebra(o.algebra);
  OutputSet files(o.common.output_dir);
  json report;
  bool holds = false;
  std::string name;
  if (o.mode == "poisson") {
    CentralizerOptions opts;
    if (o.max_degree) opts.max_degree = *o.max_degree;
    const auto r = centralizer_basis(subriemannian_hamiltonian(alg), o.degree, opts);
    report = to_json(r);
    holds = r.minimal;
    out << "Poisson centralizer of H up to degree " << o.degree << ": dimension " << r.nullspace_dimension
        << ", generated part " << r.predicted_dimension << "\n";
    name = "centralizer_poisson_d" + std::to_string(o.degree) + ".json";
  } else {
    CommutantOptions opts;
    if (o.max_degree) opts.max_degree = *o.max_degree;
    const auto ctx = make_enveloping(alg);
    const auto r = commutant_basis(quantized_hamiltonian(ctx), o.degree, opts);
    report = to_json(r);
    holds = r.minimal;
    out << "commutant of the quantized H up to degree " << o.degree << ": dimension " << r.dimension
        << ", generated part " << r.predicted_dimension << "\n";
    name = "commutant_uea_d" + std::to_string(o.degree) + ".json";
  }
  out << (holds ? "generated by H and the Casimirs at this degree"
                : "LARGER than the span of products of H and the Casimirs")
      << "\n";
  files.add_json(name, report);
  json meta = sidecar(sub, "centralizer");
  meta["outputs"] = {name};
  files.add_json(name.substr(0, name.size() - 5) + ".meta.json", meta);
  files.commit();
  return holds ? kSuccess : kChecksFailed;
}

// ---------------------------------------------------------------- dynamics

using AnySystem =
    std::variant<dyn::LiePoissonSystem, dyn::ReducedN4System, dyn::YangMillsSystem, dyn::HeisenbergReducedSystem>;

struct SystemOptions {
  std::string system = "full";
  std::string algebra = "n4";
  std::string init;
  std::optional<double> w0, C, energy;
  double offset = 0.0;
};

void add_system_options(CLI::App* sub, SystemOptions& s) {
  sub->add_option("--system", s.system, "full | reduced | yang_mills | heisenberg")
      ->check(CLI::IsMember({"full", "reduced", "yang_mills", "heisenberg"}))
      ->capture_default_str();
  sub->add_option("--algebra", s.algebra, "Builtin name or definition file (full system)")->capture_default_str();
  sub->add_option("--init", s.init, "Initial state, comma separated, in the system's coordinates");
  sub->add_option("--w0", s.w0, "Orbit label w0 (reduced, heisenberg)");
  sub->add_option("--C", s.C, "Orbit label uv - yw (reduced)");
  sub->add_option("--offset", s.offset, "Coupling offset of the quartic oscillator")->capture_default_str();
  sub->add_option("--energy", s.energy, "Start the quartic oscillator on this energy shell");
}

struct BuiltSystem {
  AnySystem system;
  Eigen::VectorXd x0;
  json description;
};

const std::vector<double> kDefaultDualPoint{0.4, -0.3, 0.6, 0.5, -0.7, 0.8};

BuiltSystem build_system(const SystemOptions& s) {
  std::vector<double> init = s.init.empty() ? std::vector<double>{} : parse_list(s.init, "--init");
  json desc{{"system", s.system}};
  if (s.system == "full") {
    const AlgebraPtr alg = resolve_algebra(s.algebra);
    if (init.empty()) {
      if (alg->dim() != 6) throw UsageError("--init is required for this algebra");
      init = kDefaultDualPoint;
    }
    auto sys = dyn::LiePoissonSystem::subriemannian(alg);
    desc["algebra"] = algebra_to_json(*alg);
    return {std::move(sys), to_vector(init), desc};
  }
  if (s.system == "reduced") {
    if (init.empty()) init = kDefaultDualPoint;
    dyn::OrbitChart<double> orbit{};
    Eigen::VectorXd x0;
    if (init.size() == 6) {
      const auto [o, c] = dyn::reduce_to_orbit<double>(dyn::DualVector<double>(init.data()));
      orbit = o;
      x0 = c;
    } else {
      if (!s.w0 || !s.C) throw UsageError("reduced system needs --w0 and --C with a 4-entry --init");
      if (*s.w0 == 0 || *s.C == 0) throw UsageError("reduced system needs w0 != 0 and C != 0");
      orbit = {*s.w0, *s.C};
      x0 = to_vector(init);
    }
    desc["w0"] = orbit.w0;
    desc["C"] = orbit.C;
    return {dyn::ReducedN4System{orbit}, x0, desc};
  }
  if (s.system == "yang_mills") {
    dyn::YangMillsSystem ym{s.offset};
    desc["offset"] = s.offset;
    Eigen::VectorXd x0;
    if (s.energy) {
      if (init.empty()) init = {0.3, 0.2, 0.1};
      if (init.size() != 3) throw UsageError("with --energy, --init gives (q1, q2, p1)");
      x0 = dyn::yang_mills_state_on_shell(ym, *s.energy, init[0], init[1], init[2]);
      desc["energy"] = *s.energy;
    } else {
      if (init.empty()) init = {0.3, 0.2, 0.1, 0.9};
      x0 = to_vector(init);
    }
    return {ym, x0, desc};
  }
  // heisenberg
  dyn::HeisenbergReducedSystem h{s.w0.value_or(1.0)};
  desc["w0"] = h.w0;
  if (init.empty()) init = {1.0, 0.0};
  return {h, to_vector(init), desc};
}

int state_dim(const AnySystem& s) {
  return std::visit([](const auto& sys) { return sys.dim(); }, s);
}

struct IntegratorOptions {
  std::string method = "implicit_midpoint";
  double dt = 1e-3;
  double T = 10.0;
  double newton_tol = 1e-12;
  int newton_max_iters = 50;

  dyn::IntegratorConfig config() const {
    auto m = dyn::parse_method(method);
    if (!m) throw UsageError("unknown method '" + method + "'");
    dyn::IntegratorConfig cfg{*m, dt, T, newton_tol, newton_max_iters};
    cfg.validate();
    return cfg;
  }
};

void add_integrator_options(CLI::App* sub, IntegratorOptions& i, bool with_T = true) {
  sub->add_option("--method", i.method, "implicit_midpoint | rk4")->capture_default_str();
  sub->add_option("--dt", i.dt, "Time step")->capture_default_str();
  if (with_T) sub->add_option("--T", i.T, "Final time (a multiple of dt)")->capture_default_str();
  sub->add_option("--newton-tol", i.newton_tol, "Midpoint Newton tolerance")->capture_default_str();
  sub->add_option("--newton-max-iters", i.newton_max_iters, "Midpoint Newton iteration cap")->capture_default_str();
}

void check_init(const BuiltSystem& b) {
  if (b.x0.size() != state_dim(b.system))
    throw UsageError("--init has " + std::to_string(b.x0.size()) + " entries, the system needs " +
                     std::to_string(state_dim(b.system)));
}

struct IntegrateCmd {
  Common common;
  SystemOptions system;
  IntegratorOptions integrator;
  std::size_t every = 1;
  bool lift = false;
};

int cmd_integrate(const IntegrateCmd& o, const CLI::App* sub, std::ostream& out) {
  const auto built = build_system(o.system);
  check_init(built);
  const auto cfg = o.integrator.config();
  const auto traj =
      std::visit([&](const auto& sys) { return dyn::integrate(sys, built.x0, cfg, o.every); }, built.system);

  std::vector<std::string> header{"t"};
  header.insert(header.end(), traj.state_names.begin(), traj.state_names.end());
  // Audit columns are prefixed so that e.g. the Casimir w cannot collide with the state w.
  for (const auto& a : traj.audit_names) header.push_back("audit_" + a);
  std::vector<const Eigen::MatrixXd*> blocks{&traj.states, &traj.audits};

  Eigen::MatrixXd group;
  if (o.lift) {
    const auto* full = std::get_if<dyn::LiePoissonSystem>(&built.system);
    if (!full || full->algebra()->dim() != 6 || !(*full->algebra() == *builtin(BuiltinAlgebra::n4_lower_triangular)))
      throw UsageError("--lift needs the full system on n4");
    if (o.every != 1) throw UsageError("--lift needs --every 1");
    const auto path = dyn::reconstruct_group(traj);
    group.resize(static_cast<Eigen::Index>(path.size()), 6);
    for (std::size_t i = 0; i < path.size(); ++i) group.row(static_cast<Eigen::Index>(i)) = path[i].entries().transpose();
    for (const char* n : {"g21", "g32", "g43", "g31", "g42", "g41"}) header.push_back(n);
    blocks.push_back(&group);
  }

  json drift = json::object();
  for (Eigen::Index c = 0; c < traj.audits.cols(); ++c)
    drift[traj.audit_names[static_cast<std::size_t>(c)]] =
        (traj.audits.col(c).array() - traj.audits(0, c)).abs().maxCoeff();

  OutputSet files(o.common.output_dir);
  files.add("trajectory.csv", csv_table(header, traj.times, blocks));
  json meta = sidecar(sub, "integrate");
  meta["system"] = built.description;
  meta["initial_state"] = vector_json(built.x0);
  meta["samples"] = traj.size();
  meta["max_newton_iterations"] = traj.max_newton_iterations;
  meta["max_abs_drift"] = drift;
  meta["outputs"] = {"trajectory.csv"};
  files.add_json("trajectory.meta.json", meta);
  files.commit();
  out << "integrated " << cfg.steps() << " steps, " << traj.size() << " samples\n";
  for (const auto& [k, v] : drift.items()) out << "  max |delta " << k << "| = " << v.get<double>() << "\n";
  return kSuccess;
}

struct LyapunovCmd {
  Common common;
  SystemOptions system;
  IntegratorOptions integrator;
  double horizon = 1000.0;
  double renorm = 1.0;
  double separation = 1e-8;
};

int cmd_lyapunov(LyapunovCmd o, const CLI::App* sub, std::ostream& out) {
  if (o.system.system == "yang_mills" && !o.system.energy && o.system.init.empty()) o.system.energy = 0.5;
  const auto built = build_system(o.system);
  check_init(built);
  auto cfg = o.integrator;
  cfg.T = o.renorm;
  const auto r = std::visit(
      [&](const auto& sys) { return dyn::lyapunov_max(sys, built.x0, cfg.config(), o.renorm, o.horizon, o.separation); },
      built.system);

  Eigen::MatrixXd est(static_cast<Eigen::Index>(r.running.size()), 1);
  for (std::size_t i = 0; i < r.running.size(); ++i) est(static_cast<Eigen::Index>(i), 0) = r.running[i];
  OutputSet files(o.common.output_dir);
  files.add("lyapunov.csv", csv_table({"t", "estimate"}, r.times, {&est}));
  json result{{"estimate", r.estimate}, {"horizon", o.horizon}, {"renorm_interval", o.renorm}};
  files.add_json("lyapunov.json", result);
  json meta = sidecar(sub, "lyapunov");
  meta["system"] = built.description;
  meta["initial_state"] = vector_json(built.x0);
  meta["outputs"] = {"lyapunov.csv", "lyapunov.json"};
  files.add_json("lyapunov.meta.json", meta);
  files.commit();
  out << "largest Lyapunov exponent estimate: " << format_double(r.estimate) << "\n";
  return kSuccess;
}

struct PoincareCmd {
  Common common;
  SystemOptions system;
  IntegratorOptions integrator;
  int index = 0;
  double value = 0.0;
  std::string direction = "up";
};

int cmd_poincare(const PoincareCmd& o, const CLI::App* sub, std::ostream& out) {
  const auto built = build_system(o.system);
  check_init(built);
  const auto cfg = o.integrator.config();
  const dyn::Crossing dir = o.direction == "up"     ? dyn::Crossing::upward
                            : o.direction == "down" ? dyn::Crossing::downward
                                                    : dyn::Crossing::both;
  const dyn::Section section{o.index, o.value, dir};
  const auto points = std::visit([&](const auto& sys) { return dyn::poincare_section(sys, built.x0, cfg, section); },
                                 built.system);
  const auto names = std::visit([](const auto& sys) { return sys.state_names(); }, built.system);

  std::vector<double> times;
  Eigen::MatrixXd states(static_cast<Eigen::Index>(points.size()), state_dim(built.system));
  for (std::size_t i = 0; i < points.size(); ++i) {
    times.push_back(points[i].time);
    states.row(static_cast<Eigen::Index>(i)) = points[i].state.transpose();
  }
  std::vector<std::string> header{"t"};
  header.insert(header.end(), names.begin(), names.end());
  OutputSet files(o.common.output_dir);
  files.add("section.csv", csv_table(header, times, {&states}));
  json meta = sidecar(sub, "poincare");
  meta["system"] = built.description;
  meta["initial_state"] = vector_json(built.x0);
  meta["crossings"] = points.size();
  meta["outputs"] = {"section.csv"};
  files.add_json("section.meta.json", meta);
  files.commit();
  out << points.size() << " section crossings\n";
  return kSuccess;
}

struct ShootCmd {
  Common common;
  IntegratorOptions integrator;
  std::string target;
  std::string target_from;
  std::string guess;
  int max_iterations = 100;
  double tolerance = 1e-10;
  double fd_step = 1e-6;
};

int cmd_shoot(ShootCmd o, const CLI::App* sub, std::ostream& out) {
  dyn::ShootConfig cfg;
  cfg.integrator = o.integrator.config();
  cfg.max_iterations = o.max_iterations;
  cfg.tolerance = o.tolerance;
  cfg.fd_step = o.fd_step;
  const auto system = dyn::LiePoissonSystem::subriemannian(builtin(BuiltinAlgebra::n4_lower_triangular));

  dyn::GroupElement target;
  if (!o.target_from.empty()) {
    const auto p = parse_list(o.target_from, "--target-from");
    if (p.size() != 6) throw UsageError("--target-from needs six momentum entries");
    target = dyn::geodesic_endpoint(system, to_vector(p), cfg.integrator);
  } else {
    if (o.target.empty()) throw UsageError("give --target or --target-from");
    const auto t = parse_list(o.target, "--target");
    if (t.size() != 6) throw UsageError("--target needs six entries (g21, g32, g43, g31, g42, g41)");
    target = dyn::GroupElement(dyn::GroupElement::Entries(t.data()));
  }
  const auto g = o.guess.empty() ? std::vector<double>{0.1, 0.1, 0.1, 0, 0, 0} : parse_list(o.guess, "--guess");
  if (g.size() != 6) throw UsageError("--guess needs six momentum entries");
  const auto r = dyn::shoot_endpoint(target, to_vector(g), cfg);

  const auto traj = dyn::integrate(system, r.p0, cfg.integrator);
  const auto path = dyn::reconstruct_group(traj);
  Eigen::MatrixXd group(static_cast<Eigen::Index>(path.size()), 6);
  for (std::size_t i = 0; i < path.size(); ++i) group.row(static_cast<Eigen::Index>(i)) = path[i].entries().transpose();
  std::vector<std::string> header{"t"};
  header.insert(header.end(), traj.state_names.begin(), traj.state_names.end());
  for (const char* n : {"g21", "g32", "g43", "g31", "g42", "g41"}) header.push_back(n);

  const Eigen::VectorXd target_entries = target.entries();
  const Eigen::VectorXd end_entries = r.endpoint.entries();
  json result{{"converged", r.converged},       {"residual_norm", r.residual_norm},
              {"iterations", r.iterations},     {"p0", vector_json(r.p0)},
              {"target", vector_json(target_entries)}, {"endpoint", vector_json(end_entries)}};
  OutputSet files(o.common.output_dir);
  files.add_json("shoot.json", result);
  files.add("geodesic.csv", csv_table(header, traj.times, {&traj.states, &group}));
  json meta = sidecar(sub, "shoot");
  meta["outputs"] = {"shoot.json", "geodesic.csv"};
  files.add_json("shoot.meta.json", meta);
  files.commit();
  out << (r.converged ? "converged" : "NOT converged") << " after " << r.iterations
      << " iterations, residual " << format_double(r.residual_norm) << "\n";
  return r.converged ? kSuccess : kChecksFailed;
}

struct ScaleCheckCmd {
  Common common;
  double w0 = 2.0;
  double C = 0.7;
  int samples = 1000;
  double tolerance = 1e-10;
};

int cmd_scale_check(const ScaleCheckCmd& o, const CLI::App* sub, std::ostream& out) {
  if (o.w0 == 0) throw UsageError("--w0 must be nonzero");
  const auto scaled = dyn::derive_scaled_hamiltonian();
  const auto audit = dyn::audit_scaling_brackets();
  const dyn::OrbitChart<double> orbit{o.w0, o.C};
  std::mt19937_64 rng(o.common.seed);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  double worst = 0, worst_roundtrip = 0;
  for (int i = 0; i < o.samples; ++i) {
    const dyn::ChartVector<double> c(d(rng), d(rng), d(rng), d(rng));
    const auto hat = dyn::ym_scale(c, o.w0);
    const double before = orbit.hamiltonian(c);
    const double after = scaled.transformed.evaluate(hat, o.w0, o.C);
    worst = std::max(worst, std::abs(after - before) / std::max(1.0, std::abs(before)));
    worst_roundtrip = std::max(worst_roundtrip, (dyn::ym_unscale(hat, o.w0) - c).lpNorm<Eigen::Infinity>());
  }
  const bool ok = worst <= o.tolerance && audit.mismatches == 0 && scaled.quartic_only_uv_squared &&
                  worst_roundtrip <= 1e-12;
  out << scaled.text << "\n";
  out << "max relative Hamiltonian mismatch over " << o.samples << " points: " << format_double(worst) << "\n";
  out << "bracket audit: " << audit.pairs_checked << " pairs, " << audit.mismatches << " mismatches\n";
  out << "quartic part is a multiple of uh^2 vh^2: " << (scaled.quartic_only_uv_squared ? "yes" : "no") << "\n";

  json report{{"hamiltonian", scaled.text},
              {"prefactor_w0_thirds", scaled.prefactor_w0_thirds},
              {"quartic_coefficient", to_string(scaled.quartic_coefficient)},
              {"quartic_only_uv_squared", scaled.quartic_only_uv_squared},
              {"max_relative_mismatch", worst},
              {"max_roundtrip_error", worst_roundtrip},
              {"bracket_pairs_checked", audit.pairs_checked},
              {"bracket_mismatches", audit.mismatches},
              {"ok", ok}};
  OutputSet files(o.common.output_dir);
  files.add_json("scale_check.json", report);
  json meta = sidecar(sub, "scale-check");
  meta["outputs"] = {"scale_check.json"};
  files.add_json("scale_check.meta.json", meta);
  files.commit();
  return ok ? kSuccess : kChecksFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Carnot group algebra and geodesic dynamics toolkit", "carnot"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  VerifyOptions verify;
  auto* s_verify = app.add_subcommand("verify", "Check algebra axioms, bracket table and Casimirs");
  add_common(s_verify, verify.common);
  s_verify->add_option("--algebra", verify.algebra, "Builtin name or definition file")->capture_default_str();
  s_verify->add_option("--jacobi-samples", verify.jacobi_samples, "Random triples for the Jacobi check")
      ->capture_default_str();

  CentralizerCmd centralizer;
  auto* s_cent = app.add_subcommand("centralizer", "Bounded-degree centralizer of the Hamiltonian");
  add_common(s_cent, centralizer.common);
  s_cent->add_option("--algebra", centralizer.algebra, "Builtin name or definition file")->capture_default_str();
  s_cent->add_option("--mode", centralizer.mode, "poisson | uea")
      ->check(CLI::IsMember({"poisson", "uea"}))
      ->capture_default_str();
  s_cent->add_option("--degree", centralizer.degree, "Degree bound")->capture_default_str();
  s_cent->add_option("--max-degree", centralizer.max_degree, "Override the degree limit (6 poisson, 4 uea)");

  IntegrateCmd integrate;
  auto* s_int = app.add_subcommand("integrate", "Integrate a trajectory and write it as CSV");
  add_common(s_int, integrate.common);
  add_system_options(s_int, integrate.system);
  add_integrator_options(s_int, integrate.integrator);
  s_int->add_option("--every", integrate.every, "Keep every n-th step")->check(CLI::PositiveNumber)->capture_default_str();
  s_int->add_flag("--lift", integrate.lift, "Append the group path g(t) (full n4 system)");

  LyapunovCmd lyapunov;
  lyapunov.system.system = "yang_mills";
  lyapunov.integrator.dt = 0.01;
  auto* s_lyap = app.add_subcommand("lyapunov", "Largest Lyapunov exponent by renormalization");
  add_common(s_lyap, lyapunov.common);
  add_system_options(s_lyap, lyapunov.system);
  add_integrator_options(s_lyap, lyapunov.integrator, false);
  s_lyap->add_option("--horizon", lyapunov.horizon, "Total integration time")->capture_default_str();
  s_lyap->add_option("--renorm", lyapunov.renorm, "Renormalization interval")->capture_default_str();
  s_lyap->add_option("--separation", lyapunov.separation, "Initial offset of the companion")->capture_default_str();

  PoincareCmd poincare;
  poincare.system.system = "yang_mills";
  poincare.integrator.T = 100.0;
  auto* s_poin = app.add_subcommand("poincare", "Poincare section crossings");
  add_common(s_poin, poincare.common);
  add_system_options(s_poin, poincare.system);
  add_integrator_options(s_poin, poincare.integrator);
  s_poin->add_option("--section-index", poincare.index, "State coordinate defining the section")
      ->capture_default_str();
  s_poin->add_option("--section-value", poincare.value, "Section level")->capture_default_str();
  s_poin->add_option("--direction", poincare.direction, "up | down | both")
      ->check(CLI::IsMember({"up", "down", "both"}))
      ->capture_default_str();

  ShootCmd shoot;
  shoot.integrator.T = 1.0;
  shoot.integrator.dt = 0.01;
  auto* s_shoot = app.add_subcommand("shoot", "Find initial momentum reaching a target group element");
  add_common(s_shoot, shoot.common);
  add_integrator_options(s_shoot, shoot.integrator);
  s_shoot->add_option("--target", shoot.target, "Target entries g21,g32,g43,g31,g42,g41");
  s_shoot->add_option("--target-from", shoot.target_from, "Use the endpoint reached from this momentum");
  s_shoot->add_option("--guess", shoot.guess, "Initial momentum guess (six entries)");
  s_shoot->add_option("--max-iter", shoot.max_iterations, "Iteration budget")->capture_default_str();
  s_shoot->add_option("--tol", shoot.tolerance, "Residual tolerance")->capture_default_str();
  s_shoot->add_option("--fd-step", shoot.fd_step, "Finite-difference step")->capture_default_str();

  ScaleCheckCmd scale;
  auto* s_scale = app.add_subcommand("scale-check", "Audit the cube-root rescaling of the orbit Hamiltonian");
  add_common(s_scale, scale.common);
  s_scale->add_option("--w0", scale.w0, "Orbit label w0")->capture_default_str();
  s_scale->add_option("--C", scale.C, "Orbit label uv - yw")->capture_default_str();
  s_scale->add_option("--samples", scale.samples, "Random evaluation points")->capture_default_str();
  s_scale->add_option("--tolerance", scale.tolerance, "Relative tolerance")->capture_default_str();

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);  // CLI11 consumes from the back
    try {
      app.parse(rest);
    } catch (const CLI::ParseError& e) {
      std::ostringstream o, er;
      const int code = app.exit(e, o, er);
      out << o.str();
      err << er.str();
      return code == 0 ? kSuccess : kConfigError;
    }

    if (s_verify->parsed()) return cmd_verify(verify, s_verify, out);
    if (s_cent->parsed()) return cmd_centralizer(centralizer, s_cent, out);
    if (s_int->parsed()) return cmd_integrate(integrate, s_int, out);
    if (s_lyap->parsed()) return cmd_lyapunov(lyapunov, s_lyap, out);
    if (s_poin->parsed()) return cmd_poincare(poincare, s_poin, out);
    if (s_shoot->parsed()) return cmd_shoot(shoot, s_shoot, out);
    if (s_scale->parsed()) return cmd_scale_check(scale, s_scale, out);
    return kConfigError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const LimitError& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return kLimitExceeded;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace carnot::cli
