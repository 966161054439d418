#include "lipfree/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <regex>

#include "lipfree/duality.hpp"
#include "lipfree/errors.hpp"
#include "lipfree/free_norm.hpp"
#include "lipfree/io.hpp"
#include "lipfree/mean_projection.hpp"
#include "lipfree/quotient.hpp"
#include "lipfree/real_line.hpp"
#include "lipfree/verify.hpp"

namespace lipfree {

namespace {

using io::json;

struct Options {
  bool exact = false;
  bool floating = false;
  std::string plot_dir;
  std::string file;
  std::string function;
  std::size_t dim = 0;  // 0: infer
  std::string domain_norm = "l2";
  std::string codomain_norm = "linf";
  std::string sample;
  std::size_t trials = 200;
  double tol = 1e-8;
  std::string box = "-10,10";
  std::uint64_t seed = 42;
  std::size_t probes = 1;
  std::string suite = "all";

  Mode mode() const {
    if (exact) return Mode::Exact;
    if (floating) return Mode::Float;
    return default_mode();
  }
};

// A checked property failed; maps to exit code 1.
struct AssertionFailure {
  json report;
};

std::size_t infer_dim(const std::string& text) {
  static const std::regex var(R"(x(\d+))");
  std::size_t dim = 1;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it) {
    dim = std::max(dim, static_cast<std::size_t>(std::stoul((*it)[1].str())) + 1);
  }
  return dim;
}

FunctionSpec load_function(const Options& o, std::size_t dim) {
  Space domain(dim, parse_norm_kind(o.domain_norm));
  auto comps = expr::parse_components(o.function, dim);
  return parse_function(o.function, domain, Space(comps.size(), parse_norm_kind(o.codomain_norm)));
}

template <class S>
Molecule<S> convert(const Molecule<Rational>& m) {
  if constexpr (is_exact_v<S>) {
    return canonicalize(m);
  } else {
    return canonicalize(to_double_molecule(m));
  }
}

template <class S>
std::vector<Point<S>> convert(const std::vector<Point<Rational>>& pts) {
  std::vector<Point<S>> out;
  for (const auto& p : pts) {
    Point<S> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = from_rational<S>(p[i]);
    out.push_back(std::move(q));
  }
  return out;
}

void write_plot(const Options& o, const std::string& name, const std::string& body) {
  if (o.plot_dir.empty()) return;
  std::filesystem::create_directories(o.plot_dir);
  std::ofstream f(std::filesystem::path(o.plot_dir) / name);
  if (!f) throw FormatError("cannot write plot data to '" + o.plot_dir + "'");
  f << body;
}

template <class S>
json norm_report(const Options& o) {
  auto m = convert<S>(io::load_molecule(o.file));
  auto c = compare_norms(m);
  json potential = json::array();
  for (const auto& [x, v] : c.dual.potential) potential.push_back({{"x", io::point_json(x)}, {"f", io::to_json(v)}});
  json flow = json::array();
  for (const auto& e : c.primal.flow) {
    flow.push_back({{"from", io::point_json(e.from)}, {"to", io::point_json(e.to)}, {"amount", io::to_json(e.amount)}});
  }
  json r{{"command", "norm"},
         {"mode", std::string(to_string(o.mode()))},
         {"input", io::molecule_json(m)},
         {"value", io::to_json(c.dual.value)},
         {"primal_value", io::to_json(c.primal.value)},
         {"gap", io::to_json(c.gap)},
         {"potential", std::move(potential)},
         {"flow", std::move(flow)}};
  bool ok;
  if constexpr (is_exact_v<S>) {
    ok = c.gap == 0;
  } else {
    ok = c.gap <= 1e-9 * std::max(1.0, std::abs(c.dual.value));
  }
  if (!ok) throw AssertionFailure{r};
  return r;
}

template <class S>
json beta_report(const Options& o) {
  auto m = convert<S>(io::load_molecule(o.file));
  return {{"command", "beta"},
          {"mode", std::string(to_string(o.mode()))},
          {"input", io::molecule_json(m)},
          {"beta", io::point_json(beta(m))},
          {"is_kernel", is_kernel(m)}};
}

template <class S>
json pair_report(const Options& o) {
  auto raw = io::load_molecule(o.file);
  auto m = convert<S>(raw);
  auto f = load_function(o, m.space.dim);
  return {{"command", "pair"},
          {"mode", std::string(to_string(o.mode()))},
          {"function", f.to_string()},
          {"input", io::molecule_json(m)},
          {"pairing", io::point_json(pair(f, m))}};
}

Box parse_box(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw FormatError("--box expects 'lo,hi'");
  Box b{parse_rational(text.substr(0, comma)).get_d(), parse_rational(text.substr(comma + 1)).get_d()};
  if (!(b.lo < b.hi)) throw FormatError("--box needs lo < hi");
  return b;
}

template <class S>
json lintest_report(const Options& o) {
  auto f = load_function(o, o.dim ? o.dim : infer_dim(o.function));
  auto r = linearity_test<S>(f, {o.trials, o.tol, parse_box(o.box), o.seed});
  json report{{"command", "lintest"},
              {"mode", std::string(to_string(o.mode()))},
              {"function", f.to_string()},
              {"domain", io::space_json(f.domain())},
              {"trials_run", r.trials_run},
              {"is_linear", r.is_linear},
              {"witness", r.witness ? io::molecule_json(*r.witness) : json(nullptr)},
              {"pairing", io::point_json(r.pairing)}};
  if (!r.is_linear) throw AssertionFailure{report};
  return report;
}

std::vector<Point<double>> default_projection_sample(std::size_t dim) {
  std::vector<Point<double>> pts;
  if (dim == 1) {
    for (int k = -16; k <= 16; ++k) pts.push_back({k / 4.0});
    return pts;
  }
  // {-2, ..., 2}^dim lattice.
  std::vector<int> idx(dim, -2);
  for (;;) {
    Point<double> p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = idx[i];
    pts.push_back(std::move(p));
    std::size_t d = 0;
    while (d < dim && ++idx[d] > 2) idx[d++] = -2;
    if (d == dim) break;
  }
  return pts;
}

json project_report(const Options& o) {
  auto f = load_function(o, o.dim ? o.dim : infer_dim(o.function));
  const std::size_t n = f.domain().dim;
  auto sample = o.sample.empty() ? default_projection_sample(n) : convert<double>(io::parse_points(o.sample, n));
  auto sched = default_schedule(n);
  auto d = decompose(f, sample, sched, 1e-6, {o.probes, o.seed});
  json columns = json::array();
  for (std::size_t j = 0; j < d.projection.columns.size(); ++j) {
    const auto& c = d.projection.columns[j];
    json levels = json::array();
    std::string plot = "# level radius value...\n";
    for (std::size_t k = 0; k < c.levels.size(); ++k) {
      levels.push_back(io::point_json(c.levels[k]));
      plot += std::to_string(k) + " " + format_double(sched.radius(k));
      for (double v : c.levels[k]) plot += " " + format_double(v);
      plot += "\n";
    }
    write_plot(o, "column_" + std::to_string(j) + ".dat", plot);
    columns.push_back({{"levels", std::move(levels)},
                       {"converged", c.converged},
                       {"settled_level", c.settled_level ? json(*c.settled_level) : json(nullptr)},
                       {"constant_shortcut", c.constant_shortcut}});
  }
  json report{{"command", "project"},
              {"mode", "float"},
              {"function", f.to_string()},
              {"domain", io::space_json(f.domain())},
              {"codomain", io::space_json(f.codomain())},
              {"T", io::matrix_json(d.projection.map)},
              {"columns", std::move(columns)},
              {"admissible", d.projection.admissible},
              {"additivity_defect",
               d.projection.additivity_defect ? json(*d.projection.additivity_defect) : json(nullptr)},
              {"bound",
               {{"lip", d.lip},
                {"operator_norm", d.operator_norm},
                {"residual_lip", d.residual_lip},
                {"lower_ok", d.lower_ok},
                {"upper_ok", d.upper_ok}}}};
  if (!d.holds()) throw AssertionFailure{report};
  return report;
}

template <class S>
json quotient_report(const Options& o) {
  if (o.sample.empty()) throw FormatError("quotient needs --sample");
  std::size_t dim = o.dim;
  if (!dim) {
    auto first = o.sample.substr(0, o.sample.find(';'));
    dim = static_cast<std::size_t>(std::count(first.begin(), first.end(), ',')) + 1;
  }
  auto f = load_function(o, dim);
  auto raw = io::parse_points(o.sample, dim);
  bool added = std::none_of(raw.begin(), raw.end(), [](const Point<Rational>& p) { return is_zero(p); });
  if (added) raw.push_back(zero_point<Rational>(dim));
  auto sample = distinct_points(convert<S>(raw));
  const S tol = is_exact_v<S> ? S(0) : from_double<S>(1e-7);
  json report{{"command", "quotient"},
              {"mode", std::string(to_string(o.mode()))},
              {"function", f.to_string()},
              {"domain", io::space_json(f.domain())},
              {"origin_added", added}};
  json pts = json::array();
  for (const auto& p : sample) pts.push_back(io::point_json(p));
  report["sample"] = std::move(pts);
  try {
    auto r = theta_isometry_check(f, sample, tol);
    report["primal"] = {{"value", io::to_json(r.primal.value)}, {"best", io::matrix_json(r.primal.best)}};
    report["dual"] = {{"value", io::to_json(r.dual.value)}, {"witness", io::molecule_json(r.dual.witness)}};
    report["gap"] = io::to_json(r.gap);
    if (dim == 1 && f.codomain().dim == 1) {
      S oracle = quotient_oracle_1d(f, sample);
      report["oracle_1d"] = io::to_json(oracle);
      if (abs_value(S(oracle - r.primal.value)) > tol) throw AssertionFailure{report};
    }
  } catch (const IsometryViolation& e) {
    report["error"] = e.what();
    throw AssertionFailure{report};
  }
  return report;
}

json phi_report(const Options& o) {
  auto m = canonicalize(io::load_molecule(o.file));
  auto s = phi_map(m);
  std::string plot = "# x value\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    plot += format_double(s.breaks[i].get_d()) + " " + format_double(s.values[i].get_d()) + "\n";
    plot += format_double(s.breaks[i + 1].get_d()) + " " + format_double(s.values[i].get_d()) + "\n";
  }
  write_plot(o, "phi.dat", plot);
  return {{"command", "phi"},
          {"mode", "exact"},
          {"input", io::molecule_json(m)},
          {"step", io::step_json(s)},
          {"l1_norm", io::to_json(l1_norm(s))},
          {"integral", io::to_json(integral(s))},
          {"beta", io::point_json(beta(m))}};
}

json verify_report(const Options& o) {
  auto reports = run_suites(o.suite, o.seed, o.mode());
  json suites = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    suites.push_back(to_json(r));
    ok = ok && r.passed();
    std::string plot = "# check cases failures worst\n";
    for (const auto& c : r.checks) {
      plot += c.name + " " + std::to_string(c.cases) + " " + std::to_string(c.failures) + " " + format_double(c.worst) +
              "\n";
    }
    write_plot(o, "verify_" + r.suite + ".dat", plot);
  }
  json report{{"command", "verify"}, {"suite", o.suite}, {"seed", o.seed}, {"suites", std::move(suites)},
              {"passed", ok}};
  if (!ok) throw AssertionFailure{report};
  return report;
}

template <class Fn>
json by_mode(const Options& o, Fn&& fn) {
  return o.mode() == Mode::Exact ? fn(Rational{}) : fn(double{});
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lipschitz-free space laboratory", "lipfree"};
  app.require_subcommand(1);
  Options o;

  auto add_mode = [&](CLI::App* sub) {
    auto* ex = sub->add_flag("--exact", o.exact, "Exact rational arithmetic");
    auto* fl = sub->add_flag("--float", o.floating, "Double-precision arithmetic");
    ex->excludes(fl);
  };
  auto add_plot = [&](CLI::App* sub) {
    sub->add_option("--plot-data", o.plot_dir, "Directory for column files used by external plotting");
  };
  auto add_function = [&](CLI::App* sub, bool with_dim) {
    sub->add_option("function", o.function, "Function body, components separated by ';'")->required();
    if (with_dim) sub->add_option("--dim", o.dim, "Domain dimension (default: inferred from variables)");
    sub->add_option("--domain-norm", o.domain_norm, "l1, l2 or linf")->capture_default_str();
    sub->add_option("--codomain-norm", o.codomain_norm, "l1, l2 or linf")->capture_default_str();
  };

  auto* norm_cmd = app.add_subcommand("norm", "Free norm of a molecule, dual and primal");
  norm_cmd->add_option("molecule", o.file, "Molecule file")->required();
  add_mode(norm_cmd);

  auto* beta_cmd = app.add_subcommand("beta", "Barycentre map of a molecule");
  beta_cmd->add_option("molecule", o.file, "Molecule file")->required();
  add_mode(beta_cmd);

  auto* pair_cmd = app.add_subcommand("pair", "Pairing <f, m>");
  add_function(pair_cmd, false);
  pair_cmd->add_option("molecule", o.file, "Molecule file")->required();
  add_mode(pair_cmd);

  auto* lin_cmd = app.add_subcommand("lintest", "Randomized linearity test; exit 1 with a witness");
  add_function(lin_cmd, true);
  lin_cmd->add_option("--trials", o.trials)->capture_default_str();
  lin_cmd->add_option("--tol", o.tol)->capture_default_str();
  lin_cmd->add_option("--box", o.box, "Sampling box 'lo,hi'")->capture_default_str();
  lin_cmd->add_option("--seed", o.seed)->capture_default_str();
  add_mode(lin_cmd);

  auto* proj_cmd = app.add_subcommand("project", "Linear projection by window means, with the bound report");
  add_function(proj_cmd, true);
  proj_cmd->add_option("--sample", o.sample, "Points for the Lipschitz estimates, e.g. '0;1;-1'");
  proj_cmd->add_option("--probes", o.probes, "Additivity probes (0 disables)")->capture_default_str();
  proj_cmd->add_option("--seed", o.seed)->capture_default_str();
  add_plot(proj_cmd);

  auto* quot_cmd = app.add_subcommand("quotient", "Distance to linear maps versus the kernel-ball supremum");
  add_function(quot_cmd, true);
  quot_cmd->add_option("--sample", o.sample, "Points, e.g. '0;1;-1' or '0,0;1,0'")->required();
  add_mode(quot_cmd);

  auto* phi_cmd = app.add_subcommand("phi", "Step-function image of a molecule on the real line");
  phi_cmd->add_option("molecule", o.file, "Molecule file")->required();
  add_plot(phi_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");
  verify_cmd->add_option("--suite", o.suite)->check(CLI::IsMember({"all", "s2", "s3", "s4", "s5", "s6"}))
      ->capture_default_str();
  verify_cmd->add_option("--seed", o.seed)->capture_default_str();
  add_mode(verify_cmd);
  add_plot(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    return 2;
  }

  try {
    json report;
    if (*norm_cmd) {
      report = by_mode(o, [&](auto tag) { return norm_report<decltype(tag)>(o); });
    } else if (*beta_cmd) {
      report = by_mode(o, [&](auto tag) { return beta_report<decltype(tag)>(o); });
    } else if (*pair_cmd) {
      report = by_mode(o, [&](auto tag) { return pair_report<decltype(tag)>(o); });
    } else if (*lin_cmd) {
      report = by_mode(o, [&](auto tag) { return lintest_report<decltype(tag)>(o); });
    } else if (*proj_cmd) {
      report = project_report(o);
    } else if (*quot_cmd) {
      report = by_mode(o, [&](auto tag) { return quotient_report<decltype(tag)>(o); });
    } else if (*phi_cmd) {
      report = phi_report(o);
    } else {
      report = verify_report(o);
    }
    out << report.dump(2) << "\n";
    return 0;
  } catch (const AssertionFailure& a) {
    out << a.report.dump(2) << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lipfree
