#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "chainflux/fnn.hpp"
#include "chainflux/gds.hpp"
#include "chainflux/grid.hpp"
#include "chainflux/limiters.hpp"
#include "chainflux/markov.hpp"
#include "chainflux/problems.hpp"
#include "chainflux/schema.hpp"
#include "chainflux/schemes.hpp"
#include "chainflux/serialize.hpp"
#include "embedded_schema.hpp"

namespace chainflux::cli {

namespace {

using nlohmann::json;
using serialize::csv_double;

// ---------------------------------------------------------------------
// Config blocks

struct SchemeBlock {
  schemes::SchemeConfig config;
  bool has_speed = false;
  std::optional<bool> averaging;
};

struct ProblemBlock {
  std::string law = "advection";
  double a = 1.0;
  std::string profile = "constant";
  double u_left = 1.0;
  double u_right = 0.0;
  double x_jump = 0.0;
  double value = 0.0;
};

struct GridBlock {
  std::string mode;
  int n = 0;
  int m = 0;
  double h = 0.0;
  double tau = 0.0;
  double x0 = 0.0;
  double t0 = 0.0;
  double lambda() const { return tau / h; }
};

SchemeBlock parse_scheme(const json& cfg) {
  if (!cfg.contains("scheme"))
    throw ConfigError("config error: $.scheme is required for this command");
  const json& s = cfg.at("scheme");
  SchemeBlock b;
  b.config.preset = schemes::preset_from_name(s.at("preset").get<std::string>());
  if (b.config.preset == schemes::Preset::Limiter) {
    if (s.contains("v")) {
      b.config.velocity = s.at("v").get<double>();
      b.has_speed = true;
    }
    if (!s.contains("gamma"))
      throw ConfigError("config error: $.scheme.gamma is required for the "
                        "limiter preset");
    const auto g = s.at("gamma").get<std::vector<double>>();
    b.config.limiters = {g[0], g[1], g[2], g[3]};
    if (!b.config.limiters.signs_valid())
      throw ConfigError("config error: $.scheme.gamma must satisfy "
                        "gamma1,gamma2 <= 0 <= gamma3,gamma4");
  } else if (s.contains("a")) {
    b.config.velocity = s.at("a").get<double>();
    b.has_speed = true;
  }
  if (s.contains("averaging")) b.averaging = s.at("averaging").get<bool>();
  return b;
}

ProblemBlock parse_problem(const json& cfg) {
  ProblemBlock b;
  if (!cfg.contains("problem")) return b;
  const json& p = cfg.at("problem");
  b.law = p.at("law").get<std::string>();
  b.a = p.value("a", 1.0);
  b.profile = p.value("u0", std::string("constant"));
  b.u_left = p.value("u_left", 1.0);
  b.u_right = p.value("u_right", 0.0);
  b.x_jump = p.value("x_jump", 0.0);
  b.value = p.value("value", 0.0);
  return b;
}

GridBlock parse_grid(const json& cfg) {
  if (!cfg.contains("grid"))
    throw ConfigError("config error: $.grid is required for this command");
  const json& g = cfg.at("grid");
  GridBlock b;
  b.mode = g.at("mode").get<std::string>();
  b.h = g.at("h").get<double>();
  b.tau = g.at("tau").get<double>();
  b.x0 = g.value("x0", 0.0);
  b.t0 = g.value("t0", 0.0);
  if (b.mode == "cone") {
    if (!g.contains("n"))
      throw ConfigError("config error: $.grid.n is required in cone mode");
    b.n = g.at("n").get<int>();
  } else {
    if (!g.contains("m"))
      throw ConfigError("config error: $.grid.m is required in periodic mode");
    b.m = g.at("m").get<int>();
  }
  return b;
}

// Transport speed for the scheme: explicit scheme speed wins, then the
// problem's advection speed.
double resolve_speed(const SchemeBlock& scheme, const ProblemBlock& problem) {
  if (scheme.has_speed) return scheme.config.velocity;
  if (problem.law == "advection") return problem.a;
  return scheme.config.velocity;
}

problems::ConservationLaw make_law(const ProblemBlock& p) {
  if (p.law == "advection") return problems::advection_law(p.a);
  return problems::burgers_law();
}

std::function<double(double)> initial_profile(const ProblemBlock& p, double lo,
                                              double width) {
  if (p.profile == "sine") {
    const double pi = std::acos(-1.0);
    return [lo, width, pi](double x) {
      return std::sin(2.0 * pi * (x - lo) / width);
    };
  }
  if (p.profile == "gauss") {
    const double center = lo + 0.5 * width;
    const double sigma = width / 8.0;
    return [center, sigma](double x) {
      const double z = (x - center) / sigma;
      return std::exp(-0.5 * z * z);
    };
  }
  if (p.profile == "riemann") {
    const double ul = p.u_left, ur = p.u_right, xj = p.x_jump;
    return [ul, ur, xj](double x) { return x < xj ? ul : ur; };
  }
  const double c = p.value;
  return [c](double) { return c; };
}

// ---------------------------------------------------------------------
// Output plumbing

void write_text(const RunOptions& opt, const std::string& body,
                const char* default_format) {
  std::string path;
  std::string format = default_format;
  if (opt.config.contains("output")) {
    const json& o = opt.config.at("output");
    path = o.value("path", std::string());
    if (o.contains("format") &&
        o.at("format").get<std::string>() != format)
      throw ConfigError(std::string("config error: $.output.format must be "
                                    "\"") +
                        default_format + "\" for this command");
  }
  if (opt.output_override) path = *opt.output_override;
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << body;
}

void write_json(const RunOptions& opt, const json& doc) {
  write_text(opt, doc.dump(2) + "\n", "json");
}

// ---------------------------------------------------------------------
// Per-cell stepping with frozen nonlinear speeds

void require_cell_probabilistic(const schemes::SchemeConfig& cfg,
                                const schemes::StencilWeights& w,
                                double lambda) {
  const auto table = markov::transition_table(w);
  if (!table.probabilistic()) {
    auto report = markov::check_stability(
        w, schemes::Velocity(cfg.velocity), cfg.limiters, lambda);
    throw markov::StabilityError(
        "solve: scheme is not probabilistic at lambda " +
            std::to_string(lambda),
        std::move(report));
  }
}

std::vector<schemes::FluxCoefficients> checked_coefficients(
    const schemes::SchemeConfig& cfg, std::span<const double> speeds,
    double lambda, schemes::Boundary boundary, bool strict) {
  auto fc = schemes::per_cell_coefficients(cfg, speeds, lambda, boundary);
  if (strict)
    for (const auto& c : fc)
      require_cell_probabilistic(cfg, schemes::weights_from_fluxes(c, lambda),
                                 lambda);
  return fc;
}

// ---------------------------------------------------------------------
// Commands

int command_check(const RunOptions& opt) {
  const SchemeBlock scheme = parse_scheme(opt.config);
  const ProblemBlock problem = parse_problem(opt.config);
  const GridBlock gb = parse_grid(opt.config);
  const double lambda = gb.lambda();

  schemes::SchemeConfig cfg = scheme.config;
  cfg.velocity = resolve_speed(scheme, problem);

  const auto fc = schemes::coefficients(cfg, lambda);
  const auto w = schemes::weights_from_fluxes(fc, lambda);
  const schemes::Velocity vel(cfg.velocity);

  markov::StabilityReport report =
      markov::check_stability(w, vel, cfg.limiters, lambda);
  report.cfl_bound = markov::preset_cfl_bound(cfg);

  const auto table = markov::transition_table(w);
  const auto moments = markov::chain_moments(table, gb.h, gb.tau);
  const auto local =
      markov::local_consistency(moments, vel, cfg.limiters, gb.tau, gb.h);
  const auto global =
      markov::global_consistency(moments, vel, cfg.limiters, gb.tau, gb.h);

  json out = serialize::stability_report(report, moments, local, global, lambda);
  out["landau_constant"] = markov::landau_constant(cfg.velocity, gb.tau, gb.h);
  write_json(opt, out);
  if (opt.strict && !report.probabilistic) return 3;
  return 0;
}

void append_layer_rows(std::string& body, int layer, int first_index,
                       double x0, double h, double t,
                       std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    const int i = first_index + static_cast<int>(k);
    body += std::to_string(layer);
    body += ',';
    body += std::to_string(i);
    body += ',';
    body += csv_double(x0 + h * i);
    body += ',';
    body += csv_double(t);
    body += ',';
    body += csv_double(values[k]);
    body += '\n';
  }
}

int command_solve(const RunOptions& opt) {
  const SchemeBlock scheme = parse_scheme(opt.config);
  const ProblemBlock problem = parse_problem(opt.config);
  const GridBlock gb = parse_grid(opt.config);
  const double lambda = gb.lambda();
  const bool nonlinear = problem.law == "burgers";
  const bool averaging = scheme.averaging.value_or(nonlinear);
  const problems::ConservationLaw law = make_law(problem);

  schemes::SchemeConfig cfg = scheme.config;
  cfg.velocity = resolve_speed(scheme, problem);

  std::string body = "# lambda=" + csv_double(lambda) + "\n";
  body += "layer,i,x,t,u\n";

  if (gb.mode == "cone") {
    grid::ConeGrid g = grid::build_cone(gb.n, gb.h, gb.tau, gb.x0, gb.t0);
    const int steps = std::min(opt.config.value("steps", gb.n), gb.n);
    const auto u0 = initial_profile(problem, gb.x0, gb.h * 2 * gb.n);
    std::vector<double> d0(g.initial_points());
    for (int i = 0; i < g.initial_points(); ++i) d0[i] = u0(g.x_at(i));

    std::vector<std::vector<double>> layers;
    if (!nonlinear) {
      layers = markov::evolve_deterministic(d0, cfg, g, steps, opt.strict);
    } else {
      layers.push_back(d0);
      for (int j = 0; j < steps; ++j) {
        const std::vector<double>& prev = layers.back();
        const auto speeds = schemes::frozen_speeds(
            law.speed, prev, averaging, schemes::Boundary::Cone);
        const auto fc = checked_coefficients(cfg, speeds, lambda,
                                             schemes::Boundary::Cone,
                                             opt.strict);
        layers.push_back(
            schemes::step(prev, fc, lambda, schemes::Boundary::Cone));
      }
    }
    for (int j = 0; j < static_cast<int>(layers.size()); ++j)
      append_layer_rows(body, j, g.layer_first(j), gb.x0, gb.h, g.time_at(j),
                        layers[j]);
  } else {
    grid::PeriodicGrid g(gb.m, gb.h, gb.x0);
    const int steps = opt.config.value("steps", 0);
    const int every = opt.config.value("output_every", 1);
    const auto u0 = initial_profile(problem, gb.x0, g.period());
    std::vector<double> u(gb.m);
    for (int i = 0; i < gb.m; ++i) u[i] = u0(g.x_at(i));

    append_layer_rows(body, 0, 0, gb.x0, gb.h, gb.t0, u);
    for (int s = 1; s <= steps; ++s) {
      if (nonlinear || cfg.preset == schemes::Preset::Limiter) {
        const auto speeds =
            nonlinear ? schemes::frozen_speeds(law.speed, u, averaging,
                                               schemes::Boundary::Periodic)
                      : std::vector<double>(u.size(), cfg.velocity);
        const auto fc = checked_coefficients(
            cfg, speeds, lambda, schemes::Boundary::Periodic, opt.strict);
        u = schemes::step(u, fc, lambda, schemes::Boundary::Periodic);
      } else {
        const auto fc = schemes::coefficients(cfg, lambda);
        if (opt.strict)
          require_cell_probabilistic(
              cfg, schemes::weights_from_fluxes(fc, lambda), lambda);
        u = schemes::step(u, fc, lambda, schemes::Boundary::Periodic);
      }
      if (s % every == 0 || s == steps)
        append_layer_rows(body, s, 0, gb.x0, gb.h, gb.t0 + s * gb.tau, u);
    }
  }

  write_text(opt, body, "csv");
  return 0;
}

int command_mc(const RunOptions& opt) {
  const SchemeBlock scheme = parse_scheme(opt.config);
  const ProblemBlock problem = parse_problem(opt.config);
  const GridBlock gb = parse_grid(opt.config);
  if (gb.mode != "cone")
    throw ConfigError("config error: $.grid.mode must be \"cone\" for mc");
  if (!opt.config.contains("mc"))
    throw ConfigError("config error: $.mc is required");
  const json& mc = opt.config.at("mc");
  if (!mc.contains("seed") && !opt.seed_override)
    throw ConfigError("config error: $.mc.seed is required");

  schemes::SchemeConfig cfg = scheme.config;
  cfg.velocity = resolve_speed(scheme, problem);

  grid::ConeGrid g = grid::build_cone(gb.n, gb.h, gb.tau, gb.x0, gb.t0);
  const auto n_paths = mc.at("n_paths").get<std::size_t>();
  const std::uint64_t seed = opt.seed_override
                                 ? *opt.seed_override
                                 : mc.at("seed").get<std::uint64_t>();
  const int target_layer = mc.value("target_layer", gb.n);
  const int target_index = mc.value("target_index", gb.n);
  const int threads = mc.value("threads", 1);

  const auto u0 = initial_profile(problem, gb.x0, gb.h * 2 * gb.n);
  std::vector<double> d0(g.initial_points());
  for (int i = 0; i < g.initial_points(); ++i) d0[i] = u0(g.x_at(i));

  const auto layers =
      markov::evolve_deterministic(d0, cfg, g, target_layer, true);
  const double deterministic =
      layers.back()[target_index - g.layer_first(target_layer)];

  const auto result = markov::simulate_mc(target_layer, target_index, d0, cfg,
                                          g, n_paths, seed, threads);
  const double z = result.std_error > 0.0
                       ? (result.estimate - deterministic) / result.std_error
                       : 0.0;

  write_json(opt, json{{"estimate", result.estimate},
                       {"std_error", result.std_error},
                       {"deterministic_value", deterministic},
                       {"z_score", z},
                       {"n_paths", n_paths},
                       {"seed", seed},
                       {"target_layer", target_layer},
                       {"target_index", target_index},
                       {"lambda", gb.lambda()}});
  return 0;
}

int command_limiters(const RunOptions& opt) {
  if (!opt.config.contains("limiters"))
    throw ConfigError("config error: $.limiters is required");
  const json& lb = opt.config.at("limiters");
  const double v = lb.at("v").get<double>();
  const double gamma2 = lb.value("gamma2", 0.0);
  const double gamma3 = lb.value("gamma3", 0.0);
  const schemes::Velocity vel(v);

  json out{{"gamma1", nullptr},
           {"gamma4", nullptr},
           {"quadratic_residual_gamma1", nullptr},
           {"quadratic_residual_gamma4", nullptr}};
  schemes::LimiterSet lim{0.0, gamma2, gamma3, 0.0};
  if (vel.plus > 0.0) {
    const auto s = limiters::solve_gamma1(vel.plus, gamma2);
    lim.gamma1 = s.gamma;
    out["gamma1"] = s.gamma;
    out["quadratic_residual_gamma1"] = s.residual;
  }
  if (vel.minus > 0.0) {
    const auto s = limiters::solve_gamma4(vel.minus, gamma3);
    lim.gamma4 = s.gamma;
    out["gamma4"] = s.gamma;
    out["quadratic_residual_gamma4"] = s.residual;
  }
  out["stability_equality_residual"] =
      limiters::stability_equality_residual(vel, lim);

  schemes::SchemeConfig cfg;
  cfg.preset = schemes::Preset::Limiter;
  cfg.velocity = v;
  cfg.limiters = lim;
  const double bound = markov::preset_cfl_bound(cfg);
  if (std::isinf(bound))
    out["cfl_bound"] = nullptr;
  else
    out["cfl_bound"] = bound;

  write_json(opt, out);
  return 0;
}

int command_convergence(const RunOptions& opt) {
  const SchemeBlock scheme = parse_scheme(opt.config);
  const ProblemBlock problem = parse_problem(opt.config);
  const GridBlock gb = parse_grid(opt.config);
  if (gb.mode != "periodic")
    throw ConfigError(
        "config error: $.grid.mode must be \"periodic\" for convergence");
  if (problem.law != "advection")
    throw ConfigError(
        "config error: convergence needs the advection law (exact oracle)");
  const json& cb = opt.config.contains("convergence")
                       ? opt.config.at("convergence")
                       : json::object();
  if (!cb.contains("horizon"))
    throw ConfigError("config error: $.convergence.horizon is required");
  const double horizon = cb.at("horizon").get<double>();
  const int levels = cb.value("levels", 3);
  const double lambda = gb.lambda();
  const double period = gb.m * gb.h;

  schemes::SchemeConfig cfg = scheme.config;
  cfg.velocity = resolve_speed(scheme, problem);
  const double a = cfg.velocity;

  std::string body = "# lambda=" + csv_double(lambda) + "\n";
  body += "h,l1_error,observed_order\n";

  double prev_error = 0.0;
  for (int level = 0; level <= levels; ++level) {
    const int m = gb.m << level;
    const double h = period / m;
    const double tau = lambda * h;
    const auto steps = static_cast<long>(std::llround(horizon / tau));
    grid::PeriodicGrid g(m, h, gb.x0);
    const auto u0 = initial_profile(problem, gb.x0, period);

    std::vector<double> u(m);
    for (int i = 0; i < m; ++i) u[i] = u0(g.x_at(i));
    const auto fc = schemes::coefficients(cfg, lambda);
    for (long s = 0; s < steps; ++s)
      u = schemes::step(u, fc, lambda, schemes::Boundary::Periodic);

    const double t_final = static_cast<double>(steps) * tau;
    std::vector<double> exact(m);
    for (int i = 0; i < m; ++i) {
      // translation oracle, argument pulled back into the period
      double arg = g.x_at(i) - a * t_final - gb.x0;
      arg -= period * std::floor(arg / period);
      exact[i] = u0(gb.x0 + arg);
    }
    const double err = problems::l1_error(u, exact, h);

    body += csv_double(h);
    body += ',';
    body += csv_double(err);
    body += ',';
    body += level == 0 ? "nan"
                       : csv_double(std::log2(prev_error / err));
    body += '\n';
    prev_error = err;
  }

  write_text(opt, body, "csv");
  return 0;
}

int command_gds(const RunOptions& opt) {
  const SchemeBlock scheme = parse_scheme(opt.config);
  const ProblemBlock problem = parse_problem(opt.config);
  const GridBlock gb = parse_grid(opt.config);
  if (gb.mode != "periodic")
    throw ConfigError("config error: $.grid.mode must be \"periodic\" for gds");
  if (!opt.config.contains("gds"))
    throw ConfigError("config error: $.gds is required");
  const json& gc = opt.config.at("gds");

  gds::TwoScaleOptions topt;
  topt.scheme = scheme.config;
  topt.scheme.velocity = resolve_speed(scheme, problem);
  topt.fast_tau = gb.tau;
  topt.fast_dx = gb.h;
  topt.slow_step = gc.at("slow_step").get<double>();
  topt.substeps = gc.value("substeps", 1);
  topt.n_slow = gc.at("n_slow").get<int>();
  topt.strict = opt.strict;

  const std::string kind = gc.at("v0").get<std::string>();
  const double v0_value = gc.value("v0_value", 1.0);
  gds::SlowRate rate;
  if (kind == "zero")
    rate = [](double, double, double) { return 0.0; };
  else if (kind == "const")
    rate = [v0_value](double, double, double) { return v0_value; };
  else
    rate = [](double, double, double mu) { return mu; };

  grid::PeriodicGrid g(gb.m, gb.h, gb.x0);
  const auto u0 = initial_profile(problem, gb.x0, g.period());
  gds::TwoScaleState init;
  init.h_slow = gc.value("h0", 0.0);
  init.tau_slow = 0.0;
  init.t_fast = gb.t0;
  init.mu_field.resize(gb.m);
  for (int i = 0; i < gb.m; ++i) init.mu_field[i] = u0(g.x_at(i));

  const auto trajectory = gds::evolve_two_scale(init, rate, topt);

  std::string body = "# lambda=" + csv_double(gb.lambda()) + "\n";
  body += "tau,h_slow,mu_mean,mu_min,mu_max\n";
  for (const auto& state : trajectory) {
    const auto [mn, mx] = std::minmax_element(state.mu_field.begin(),
                                              state.mu_field.end());
    body += csv_double(state.tau_slow);
    body += ',';
    body += csv_double(state.h_slow);
    body += ',';
    body += csv_double(gds::field_mean(state.mu_field));
    body += ',';
    body += csv_double(*mn);
    body += ',';
    body += csv_double(*mx);
    body += '\n';
  }

  write_text(opt, body, "csv");
  return 0;
}

fnn::SigmoidalNetwork parse_network(const json& node_list, double alpha0) {
  fnn::SigmoidalNetwork net;
  net.alpha0 = alpha0;
  for (const json& item : node_list) {
    fnn::SigmoidalNode node;
    node.alpha = item.at("alpha").get<double>();
    node.direction = item.at("y").get<std::vector<double>>();
    node.beta = item.at("beta").get<double>();
    net.nodes.push_back(std::move(node));
  }
  return net;
}

int command_fnn(const RunOptions& opt) {
  if (!opt.config.contains("fnn"))
    throw ConfigError("config error: $.fnn is required");
  const json& fc = opt.config.at("fnn");
  if (!fc.contains("seed") && !opt.seed_override)
    throw ConfigError("config error: $.fnn.seed is required");

  const auto net = parse_network(fc.value("nodes", json::array()),
                                 fc.value("alpha0", 0.0));
  fnn::Box box;
  for (const auto& extent : fc.at("box"))
    box.extents.emplace_back(extent.at(0).get<double>(),
                             extent.at(1).get<double>());
  const auto n_samples = fc.at("n_samples").get<std::size_t>();
  const std::uint64_t seed = opt.seed_override
                                 ? *opt.seed_override
                                 : fc.at("seed").get<std::uint64_t>();

  const json& target_spec = fc.at("target");
  std::function<double(std::span<const double>)> target;
  if (target_spec.at("kind").get<std::string>() == "constant") {
    const double c = target_spec.at("value").get<double>();
    target = [c](std::span<const double>) { return c; };
  } else {
    auto target_net = parse_network(target_spec.value("nodes", json::array()),
                                    target_spec.value("alpha0", 0.0));
    target = [target_net](std::span<const double> x) {
      return fnn::eval_fnn(target_net, x);
    };
  }

  const auto result = fnn::l1_distance(net, target, box, n_samples, seed);
  write_json(opt, json{{"estimate", result.estimate},
                       {"std_error", result.std_error},
                       {"n_samples", n_samples},
                       {"seed", seed}});
  return 0;
}

}  // namespace

nlohmann::json load_config(const std::string& text) {
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t stop = std::min(e.byte, text.size());
    for (std::size_t i = 0; i < stop; ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError("config error at line " + std::to_string(line) + ": " +
                      e.what());
  }
  const json schema = json::parse(kRunConfigSchema);
  const auto errors = schema::validate(schema, cfg, "$");
  if (!errors.empty()) {
    std::string msg = "config error:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

int run(const RunOptions& opt) {
  try {
    if (opt.command == "check") return command_check(opt);
    if (opt.command == "solve") return command_solve(opt);
    if (opt.command == "mc") return command_mc(opt);
    if (opt.command == "limiters") return command_limiters(opt);
    if (opt.command == "convergence") return command_convergence(opt);
    if (opt.command == "gds") return command_gds(opt);
    if (opt.command == "fnn-approx") return command_fnn(opt);
    throw ConfigError("config error: unknown command \"" + opt.command + "\"");
  } catch (const markov::StabilityError& e) {
    json violated = json::array();
    for (const auto& [offset, value] : e.report.violated_entries)
      violated.push_back({offset, value});
    json report{{"error", "stability"},
                {"message", e.what()},
                {"probabilistic", e.report.probabilistic},
                {"violated_entries", violated}};
    if (std::isinf(e.report.cfl_bound))
      report["cfl_bound"] = nullptr;
    else
      report["cfl_bound"] = e.report.cfl_bound;
    std::cerr << report.dump(2) << "\n";
    return 3;
  }
}

}  // namespace chainflux::cli
