// Acceptance suite: runs every release criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chainflux/grid.hpp"
#include "chainflux/limiters.hpp"
#include "chainflux/markov.hpp"
#include "chainflux/problems.hpp"
#include "chainflux/rng.hpp"
#include "chainflux/schemes.hpp"
#include "support.hpp"

using namespace chainflux;
using schemes::Boundary;
using schemes::FluxCoefficients;
using schemes::LimiterSet;
using schemes::SchemeConfig;
using schemes::StencilWeights;
using schemes::Velocity;

namespace {

std::string g_cli_path;

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

std::vector<double> sweep_speeds() {
  std::vector<double> a(20);
  for (int i = 0; i < 20; ++i) a[i] = -2.0 + 4.0 * i / 19.0;
  return a;
}

std::vector<double> sweep_lambdas() {
  std::vector<double> l(20);
  for (int i = 1; i <= 20; ++i) l[i - 1] = i / 20.0;
  return l;
}

std::vector<std::pair<std::string, StencilWeights>> sweep_weights(double a,
                                                                  double lam) {
  std::vector<std::pair<std::string, StencilWeights>> out;
  out.emplace_back("centered-euler",
                   schemes::weights_from_fluxes(
                       schemes::preset_centered_euler(a), lam));
  out.emplace_back("lax-friedrichs",
                   schemes::weights_from_fluxes(
                       schemes::preset_lax_friedrichs(a, lam), lam));
  out.emplace_back("upwind", schemes::weights_from_fluxes(
                                 schemes::preset_upwind(a), lam));
  out.emplace_back("lax-wendroff",
                   schemes::weights_from_fluxes(
                       schemes::preset_lax_wendroff(a, lam), lam));
  out.emplace_back("limiter",
                   schemes::weights_from_fluxes(
                       schemes::preset_limiter_scheme(Velocity(a), {}), lam));
  out.emplace_back(
      "limiter-symmetric",
      schemes::weights_from_fluxes(
          schemes::preset_limiter_scheme(Velocity(a), {-0.5, -0.5, 0.5, 0.5}),
          lam));
  return out;
}

bool weights_nonnegative(const StencilWeights& w) {
  constexpr double tol = 1e-14;
  return w.w_m2 >= -tol && w.w_m1 >= -tol && w.w_0 >= -tol && w.w_p1 >= -tol &&
         w.w_p2 >= -tol;
}

// 1. Normalization sweep
bool criterion_normalization(std::string& detail) {
  for (double a : sweep_speeds())
    for (double lam : sweep_lambdas()) {
      if (std::abs(lam * a) > 2.0) continue;
      for (const auto& [name, w] : sweep_weights(a, lam)) {
        if (std::abs(w.sum() - 1.0) > 1e-12) {
          detail = name + " weights sum " + std::to_string(w.sum());
          return false;
        }
        const auto t = markov::transition_table(w);
        if (std::abs(t.sum() - 1.0) > 1e-12) {
          detail = name + " table sum " + std::to_string(t.sum());
          return false;
        }
      }
    }
  return true;
}

// 2. Probabilistic-interpretation verdicts
bool criterion_verdicts(std::string& detail) {
  for (double a : sweep_speeds())
    for (double lam : sweep_lambdas()) {
      if (std::abs(lam * a) > 2.0) continue;
      const double cfl = lam * std::abs(a);

      const bool upwind = weights_nonnegative(schemes::weights_from_fluxes(
          schemes::preset_upwind(a), lam));
      if (upwind != (cfl <= 1.0 + 1e-14)) {
        detail = "upwind a=" + std::to_string(a) +
                 " lam=" + std::to_string(lam);
        return false;
      }

      const bool lf = weights_nonnegative(schemes::weights_from_fluxes(
          schemes::preset_lax_friedrichs(a, lam), lam));
      if (lf != (cfl <= 1.0 + 1e-14)) {
        detail = "lax-friedrichs a=" + std::to_string(a) +
                 " lam=" + std::to_string(lam);
        return false;
      }

      const bool lw = weights_nonnegative(schemes::weights_from_fluxes(
          schemes::preset_lax_wendroff(a, lam), lam));
      if (lw != (a == 0.0 || std::abs(cfl - 1.0) <= 1e-14)) {
        detail = "lax-wendroff a=" + std::to_string(a) +
                 " lam=" + std::to_string(lam);
        return false;
      }

      const bool ce = weights_nonnegative(schemes::weights_from_fluxes(
          schemes::preset_centered_euler(a), lam));
      if (ce != (a == 0.0)) {
        detail = "centered-euler a=" + std::to_string(a) +
                 " lam=" + std::to_string(lam);
        return false;
      }
    }
  return true;
}

// 3. Symmetric limiter scheme reproduction
bool criterion_symmetric_limiter(std::string& detail) {
  const LimiterSet lim{-0.5, -0.5, 0.5, 0.5};
  for (double v : {2.0, 1.5, -1.5, -2.0}) {
    const Velocity vel(v);
    const double lam = 0.25;
    const auto w = schemes::weights_from_fluxes(
        schemes::preset_limiter_scheme(vel, lim), lam);
    const double vp = vel.plus, vm = vel.minus, av = vel.magnitude();
    const double printed[5] = {lam * vp / 2.0, lam * av / 2.0,
                               1.0 - 1.5 * lam * av, lam * av / 2.0,
                               lam * vm / 2.0};
    const double got[5] = {w.w_m2, w.w_m1, w.w_0, w.w_p1, w.w_p2};
    for (int i = 0; i < 5; ++i)
      if (std::abs(got[i] - printed[i]) > 1e-14) {
        detail = "weight " + std::to_string(i - 2) + " at v=" +
                 std::to_string(v);
        return false;
      }
  }

  // sign-definite reductions, dyadic parameters for exact comparison
  {
    const double lam = 0.25, v = 2.0;
    const auto w = schemes::weights_from_fluxes(
        schemes::preset_limiter_scheme(Velocity(v), lim), lam);
    const bool ok = w.w_m2 == lam * v / 2.0 && w.w_m1 == lam * v / 2.0 &&
                    w.w_0 == 1.0 - 1.5 * lam * v && w.w_p1 == lam * v / 2.0 &&
                    w.w_p2 == 0.0;
    if (!ok) {
      detail = "positive-velocity reduction";
      return false;
    }
  }
  {
    const double lam = 0.25, v = -2.0;
    const auto w = schemes::weights_from_fluxes(
        schemes::preset_limiter_scheme(Velocity(v), lim), lam);
    const double av = -v;
    const bool ok = w.w_m2 == 0.0 && w.w_m1 == lam * av / 2.0 &&
                    w.w_0 == 1.0 - 1.5 * lam * av &&
                    w.w_p1 == lam * av / 2.0 && w.w_p2 == lam * av / 2.0;
    if (!ok) {
      detail = "negative-velocity reduction";
      return false;
    }
  }
  return true;
}

// 4. Limiter closed forms against the quadratics and a bisection oracle
bool criterion_limiter_solvers(std::string& detail) {
  if (std::abs(limiters::solve_gamma1(1.0, 0.0).gamma - (-3.0)) > 1e-12 ||
      std::abs(limiters::solve_gamma4(1.0, 0.0).gamma - 3.0) > 1e-12) {
    detail = "unit-velocity closed forms";
    return false;
  }
  CounterRng rng(101, 0);
  for (int i = 0; i < 1000; ++i) {
    const double v = 0.1 + 9.9 * rng.next_unit();
    const double g2 = -2.0 * rng.next_unit();
    const auto s1 = limiters::solve_gamma1(v, g2);
    if (std::abs(s1.residual) > 1e-9) {
      detail = "gamma1 residual at v=" + std::to_string(v);
      return false;
    }
    const auto q1 = limiters::gamma1_quadratic(v, g2);
    const auto o1 = testsupport::bisect_quadratic(q1.a, q1.b, q1.c, true);
    if (!o1 || std::abs(s1.gamma - *o1) > 1e-8) {
      detail = "gamma1 bisection disagreement at v=" + std::to_string(v);
      return false;
    }

    const double g3 = 2.0 * rng.next_unit();
    const auto s4 = limiters::solve_gamma4(v, g3);
    if (std::abs(s4.residual) > 1e-9) {
      detail = "gamma4 residual at v=" + std::to_string(v);
      return false;
    }
    const auto q4 = limiters::gamma4_quadratic(v, g3);
    const auto o4 = testsupport::bisect_quadratic(q4.a, q4.b, q4.c, false);
    if (!o4 || std::abs(s4.gamma - *o4) > 1e-8) {
      detail = "gamma4 bisection disagreement at v=" + std::to_string(v);
      return false;
    }
  }
  return true;
}

// 5. One deterministic step equals the transition-table expectation
bool criterion_expectation_identity(std::string& detail) {
  struct Instance {
    SchemeConfig cfg;
    double lambda;
  };
  std::vector<Instance> instances;
  auto add = [&](schemes::Preset p, double v, LimiterSet lim, double lam) {
    SchemeConfig c;
    c.preset = p;
    c.velocity = v;
    c.limiters = lim;
    instances.push_back({c, lam});
  };
  add(schemes::Preset::Upwind, 1.0, {}, 0.5);
  add(schemes::Preset::LaxFriedrichs, 1.0, {}, 0.8);
  add(schemes::Preset::LaxWendroff, 1.0, {}, 1.0);
  add(schemes::Preset::CenteredEuler, 0.0, {}, 0.5);
  add(schemes::Preset::Limiter, 1.0, {-3.0, 0, 0, 0}, 0.25);
  add(schemes::Preset::Limiter, 1.5, {-0.5, -0.5, 0.5, 0.5}, 0.25);
  add(schemes::Preset::Limiter, -1.5, {-0.5, -0.5, 0.5, 0.5}, 0.25);

  CounterRng rng(55, 0);
  for (const auto& inst : instances) {
    const auto g = grid::build_cone(4, 1.0, inst.lambda);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> d0(g.initial_points());
      for (auto& v : d0) v = rng.next_unit();
      const auto layers = markov::evolve_deterministic(d0, inst.cfg, g, 1);

      // independent expectation, per-cell tables with edge trimming
      const std::size_t out_size = d0.size() - 2;
      for (std::size_t k = 0; k < out_size; ++k) {
        SchemeConfig local = inst.cfg;
        if (k == 0) local.limiters.gamma2 = 0.0;
        if (k == out_size - 1) local.limiters.gamma3 = 0.0;
        auto fc = schemes::coefficients(local, inst.lambda);
        if (k == 0) fc.bt_prev = 0.0;
        if (k == out_size - 1) fc.bt_far = 0.0;
        const auto t = markov::transition_table(
            schemes::weights_from_fluxes(fc, inst.lambda));
        const std::size_t i = k + 1;
        double expect = 0.0;
        for (int off = -2; off <= 2; ++off) {
          const long src = static_cast<long>(i) + off;
          if (src < 0 || src >= static_cast<long>(d0.size())) continue;
          expect += t.entry(off) * d0[static_cast<std::size_t>(src)];
        }
        if (std::abs(layers[1][k] - expect) > 1e-12) {
          detail = std::string(schemes::preset_name(inst.cfg.preset)) +
                   " cell " + std::to_string(k);
          return false;
        }
      }
    }
  }
  return true;
}

// 6. Monte Carlo agreement and standard-error scaling
bool criterion_mc_agreement(std::string& detail) {
  const auto g = grid::build_cone(8, 0.25, 0.125, -2.0);
  std::vector<double> d0(g.initial_points());
  for (int i = 0; i < g.initial_points(); ++i) {
    const double x = g.x_at(i);
    d0[i] = std::exp(-2.0 * x * x);
  }
  SchemeConfig cfg;
  cfg.preset = schemes::Preset::Upwind;
  cfg.velocity = 1.0;

  const auto layers = markov::evolve_deterministic(d0, cfg, g, 5);
  const double det = layers[5][8 - g.layer_first(5)];

  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = markov::simulate_mc(5, 8, d0, cfg, g, 100000, seed);
    if (r.std_error > 0.0 && std::abs(r.estimate - det) <= 3.0 * r.std_error)
      ++hits;
  }
  if (hits < 97) {
    detail = "only " + std::to_string(hits) + "/100 seeds within 3 sigma";
    return false;
  }

  const auto r3 = markov::simulate_mc(5, 8, d0, cfg, g, 1000, 12345);
  const auto r4 = markov::simulate_mc(5, 8, d0, cfg, g, 10000, 12345);
  const auto r5 = markov::simulate_mc(5, 8, d0, cfg, g, 100000, 12345);
  const double ideal = std::sqrt(10.0);
  for (double ratio : {r3.std_error / r4.std_error,
                       r4.std_error / r5.std_error}) {
    if (ratio < ideal / 1.5 || ratio > ideal * 1.5) {
      detail = "scaling ratio " + std::to_string(ratio);
      return false;
    }
  }
  return true;
}

// 7. Chain velocity is exactly the opposite of the transport velocity
bool criterion_chain_velocity(std::string& detail) {
  for (double v : {1.3, 2.0, -0.7, -2.0}) {
    const double lam = 0.25, h = 0.5, tau = 0.125;
    const auto t = markov::transition_table(schemes::weights_from_fluxes(
        schemes::preset_limiter_scheme(Velocity(v), {}), lam));
    const auto m = markov::chain_moments(t, h, tau);
    if (m.drift / tau != -v) {
      detail = "v=" + std::to_string(v) + " gives v_mc=" +
               std::to_string(m.drift / tau);
      return false;
    }
  }
  return true;
}

// 8. Convergence orders on smooth periodic advection
bool criterion_convergence_orders(std::string& detail) {
  const double lambda = 0.5, period = 1.0, horizon = 0.25, a = 1.0;
  const double pi = std::acos(-1.0);

  auto l1_at = [&](const FluxCoefficients& fc, int m) {
    const double h = period / m;
    std::vector<double> u(m);
    for (int i = 0; i < m; ++i) u[i] = std::sin(2 * pi * i * h);
    const auto steps = static_cast<long>(std::llround(horizon / (lambda * h)));
    for (long s = 0; s < steps; ++s)
      u = schemes::step(u, fc, lambda, Boundary::Periodic);
    const double t = static_cast<double>(steps) * lambda * h;
    std::vector<double> exact(m);
    for (int i = 0; i < m; ++i)
      exact[i] = std::sin(2 * pi * (i * h - a * t));
    return problems::l1_error(u, exact, h);
  };

  const int ms[4] = {40, 80, 160, 320};  // 20..160 steps at lambda one half
  double up[4], lw[4];
  for (int k = 0; k < 4; ++k) {
    up[k] = l1_at(schemes::preset_upwind(a), ms[k]);
    lw[k] = l1_at(schemes::preset_lax_wendroff(a, lambda), ms[k]);
  }
  for (int k = 1; k < 4; ++k) {
    const double up_order = std::log2(up[k - 1] / up[k]);
    if (up_order < 0.85 || up_order > 1.15) {
      detail = "upwind order " + std::to_string(up_order);
      return false;
    }
    const double lw_order = std::log2(lw[k - 1] / lw[k]);
    if (lw_order < 1.8 || lw_order > 2.2) {
      detail = "lax-wendroff order " + std::to_string(lw_order);
      return false;
    }
  }
  return true;
}

// 9. Shock speed, entropy verdicts and the tracked discrete shock
bool criterion_shock_physics(std::string& detail) {
  const problems::RiemannProblem shock{problems::burgers_law(), 1.0, 0.0, 0.0};
  if (problems::rankine_hugoniot_speed(shock) != 0.5) {
    detail = "jump speed";
    return false;
  }
  if (!problems::entropy_admissible(shock) ||
      problems::entropy_admissible(
          problems::RiemannProblem{problems::burgers_law(), 0.0, 1.0, 0.0})) {
    detail = "entropy verdicts";
    return false;
  }

  // upwind Burgers run with averaged frozen speeds, domain [-1, 1)
  const int m = 400;
  const double h = 1.0 / 200.0, lambda = 0.5;
  const int steps = 200;  // T = 0.5 at tau = lambda h
  const auto law = problems::burgers_law();
  SchemeConfig cfg;
  cfg.preset = schemes::Preset::Upwind;

  std::vector<double> u(m);
  for (int i = 0; i < m; ++i) u[i] = (-1.0 + i * h) < 0.0 ? 1.0 : 0.0;
  for (int s = 0; s < steps; ++s) {
    const auto speeds =
        schemes::frozen_speeds(law.speed, u, true, Boundary::Periodic);
    const auto fc =
        schemes::per_cell_coefficients(cfg, speeds, lambda, Boundary::Periodic);
    u = schemes::step(u, fc, lambda, Boundary::Periodic);
  }

  // median downward crossing of (u_l + u_r) / 2
  std::vector<double> crossings;
  for (int i = 0; i + 1 < m; ++i) {
    if (u[i] >= 0.5 && u[i + 1] < 0.5) {
      const double x_i = -1.0 + i * h;
      const double frac = (u[i] - 0.5) / (u[i] - u[i + 1]);
      crossings.push_back(x_i + frac * h);
    }
  }
  if (crossings.empty()) {
    detail = "no downward crossing found";
    return false;
  }
  std::sort(crossings.begin(), crossings.end());
  const double median = crossings[crossings.size() / 2];
  const double target = 0.0 + 0.5 * 0.5;
  if (std::abs(median - target) > 2.0 * h) {
    detail = "shock at " + std::to_string(median) + ", expected " +
             std::to_string(target);
    return false;
  }
  return true;
}

// 10. CFL bound of the stability-equality limiter and the maximum principle
bool criterion_limiter_cfl(std::string& detail) {
  const LimiterSet lim{-3.0, 0.0, 0.0, 0.0};
  const double lambda = 0.25;
  const auto w = schemes::weights_from_fluxes(
      schemes::preset_limiter_scheme(Velocity(1.0), lim), lambda);
  const auto report = markov::check_stability(w, Velocity(1.0), lim, lambda);
  if (std::abs(report.cfl_bound - 0.25) > 1e-12) {
    detail = "cfl bound " + std::to_string(report.cfl_bound);
    return false;
  }

  SchemeConfig cfg;
  cfg.preset = schemes::Preset::Limiter;
  cfg.velocity = 1.0;
  cfg.limiters = lim;
  const auto g = grid::build_cone(6, 1.0, lambda);
  CounterRng rng(202, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> d0(g.initial_points());
    for (auto& v : d0) v = rng.next_unit();
    const double lo = *std::min_element(d0.begin(), d0.end());
    const double hi = *std::max_element(d0.begin(), d0.end());
    const auto layers = markov::evolve_deterministic(d0, cfg, g, 6);
    for (const auto& layer : layers)
      for (double v : layer)
        if (v < lo - 1e-12 || v > hi + 1e-12) {
          detail = "maximum principle violated on trial " +
                   std::to_string(trial);
          return false;
        }
  }
  return true;
}

// 11. Byte-identical CLI outputs for identical config and seed
bool criterion_reproducibility(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "CLI path not supplied";
    return false;
  }
  const char* tmpdir = std::getenv("TMPDIR");
  const std::string dir = tmpdir ? tmpdir : "/tmp";
  const std::string stem =
      dir + "/chainflux_accept_" + std::to_string(getpid());
  const std::string cfg_path = stem + "_cfg.json";
  {
    std::ofstream cfg(cfg_path, std::ios::binary);
    cfg << R"({
  "scheme": {"preset": "upwind", "a": 1.0},
  "problem": {"law": "advection", "a": 1.0, "u0": "gauss"},
  "grid": {"mode": "cone", "n": 8, "h": 0.25, "tau": 0.125, "x0": -2.0},
  "mc": {"n_paths": 50000, "seed": 97, "threads": 4}
})";
  }
  auto run_once = [&](const std::string& out_path) {
    const std::string cmd = g_cli_path + " mc " + cfg_path + " --output " +
                            out_path + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  const std::string out1 = stem + "_out1.json";
  const std::string out2 = stem + "_out2.json";
  if (!run_once(out1) || !run_once(out2)) {
    detail = "CLI run failed";
    return false;
  }
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string b1 = slurp(out1);
  const std::string b2 = slurp(out2);
  std::remove(cfg_path.c_str());
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  if (b1.empty() || b1 != b2) {
    detail = "outputs differ or are empty";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const std::vector<Criterion> criteria{
      {"normalization sweep over every preset", criterion_normalization},
      {"probabilistic-interpretation verdicts", criterion_verdicts},
      {"symmetric limiter scheme reproduction", criterion_symmetric_limiter},
      {"limiter closed forms and bisection oracle", criterion_limiter_solvers},
      {"one-step expectation identity", criterion_expectation_identity},
      {"Monte Carlo agreement and error scaling", criterion_mc_agreement},
      {"chain velocity opposes the transport velocity",
       criterion_chain_velocity},
      {"convergence orders on smooth advection", criterion_convergence_orders},
      {"shock speed, entropy and tracked position", criterion_shock_physics},
      {"limiter CFL bound and maximum principle", criterion_limiter_cfl},
      {"byte-identical reproducibility through the CLI",
       criterion_reproducibility},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %2zu. %s%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
