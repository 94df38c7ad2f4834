#include "chainflux/markov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <thread>

#include "chainflux/rng.hpp"

namespace chainflux::markov {

namespace {

constexpr double kSignTol = 1e-14;

double kahan_sum(std::span<const double> xs) {
  double sum = 0.0, c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double TransitionTable::entry(int offset) const {
  switch (offset) {
    case -2: return p_m2;
    case -1: return p_m1;
    case 0: return p_0;
    case 1: return p_p1;
    case 2: return p_p2;
  }
  throw std::invalid_argument("TransitionTable: offset outside -2..2");
}

TransitionTable transition_table(const schemes::StencilWeights& w) {
  if (std::abs(w.sum() - 1.0) > 1e-9)
    throw InconsistencyError("transition_table: weights sum to " +
                             std::to_string(w.sum()) + ", expected 1");
  TransitionTable t;
  t.p_m2 = w.w_m2;
  t.p_m1 = w.w_m1;
  t.p_0 = w.w_0;
  t.p_p1 = w.w_p1;
  t.p_p2 = w.w_p2;
  return t;
}

ChainMoments chain_moments(const TransitionTable& t, double dx, double tau) {
  (void)tau;
  ChainMoments m;
  m.drift = dx * (-t.p_m1 + t.p_p1 - 2.0 * t.p_m2 + 2.0 * t.p_p2);
  m.second_moment =
      dx * dx * (t.p_m1 + t.p_p1 + 4.0 * t.p_m2 + 4.0 * t.p_p2);
  m.covariance = m.second_moment - m.drift * m.drift;
  return m;
}

StabilityReport check_stability(const schemes::StencilWeights& w,
                                const schemes::Velocity& vel,
                                const schemes::LimiterSet& lim, double lambda) {
  StabilityReport r;
  const std::array<std::pair<int, double>, 5> entries{{{-2, w.w_m2},
                                                       {-1, w.w_m1},
                                                       {0, w.w_0},
                                                       {1, w.w_p1},
                                                       {2, w.w_p2}}};
  for (const auto& [offset, value] : entries)
    if (value < -kSignTol) r.violated_entries.emplace_back(offset, value);
  r.probabilistic = r.violated_entries.empty();

  // The off-center weights scale linearly in lambda and the center weight is
  // 1 - lambda * c0, so the admissible range is [0, 1/c0] whenever the
  // off-center slopes are nonnegative.
  const double inf = std::numeric_limits<double>::infinity();
  if (lambda > 0.0) {
    const bool slopes_ok = w.w_m2 >= -kSignTol && w.w_m1 >= -kSignTol &&
                           w.w_p1 >= -kSignTol && w.w_p2 >= -kSignTol;
    const double c0 = (1.0 - w.w_0) / lambda;
    r.cfl_bound = !slopes_ok ? 0.0 : (c0 <= kSignTol ? inf : 1.0 / c0);
  } else {
    r.cfl_bound = 0.0;
  }

  const double vp = vel.plus;
  const double vm = vel.minus;
  const bool update_bounded =
      lambda * (vel.magnitude() + vm * lim.gamma4 - vp * lim.gamma1) <=
      1.0 + kSignTol;
  const bool left_column_ok = 0.5 * vp + vm * lim.gamma4 >= -kSignTol;
  const bool right_column_ok = 0.5 * vm + vp * lim.gamma1 <= kSignTol;
  const double spread = vp * (1.0 - lim.gamma1 - 3.0 * lim.gamma2) +
                        vm * (1.0 + lim.gamma4 + 3.0 * lim.gamma3);
  const double v_mc = vm * (1.0 + lim.gamma3 - lim.gamma4) -
                      vp * (1.0 + lim.gamma1 - lim.gamma2);
  const bool covariance_ok =
      v_mc * v_mc <= kSignTol || lambda <= spread / (v_mc * v_mc) + kSignTol;
  r.limiter_feasible =
      update_bounded && left_column_ok && right_column_ok && covariance_ok;
  return r;
}

double preset_cfl_bound(const schemes::SchemeConfig& cfg) {
  const double inf = std::numeric_limits<double>::infinity();
  const double a = cfg.velocity;
  switch (cfg.preset) {
    case schemes::Preset::CenteredEuler:
      return a == 0.0 ? inf : 0.0;
    case schemes::Preset::LaxFriedrichs:
    case schemes::Preset::Upwind:
    case schemes::Preset::LaxWendroff:
      return a == 0.0 ? inf : 1.0 / std::abs(a);
    case schemes::Preset::Limiter: {
      const schemes::Velocity vel(a);
      const schemes::LimiterSet& lim = cfg.limiters;
      const double slope_m1 =
          vel.plus * (1.0 + lim.gamma2) + vel.minus * lim.gamma4;
      const double slope_p1 =
          vel.minus * (1.0 - lim.gamma3) - vel.plus * lim.gamma1;
      const double slope_m2 = -vel.plus * lim.gamma2;
      const double slope_p2 = vel.minus * lim.gamma3;
      if (slope_m1 < -kSignTol || slope_p1 < -kSignTol ||
          slope_m2 < -kSignTol || slope_p2 < -kSignTol)
        return 0.0;
      const double c0 =
          vel.magnitude() + vel.minus * lim.gamma4 - vel.plus * lim.gamma1;
      return c0 <= kSignTol ? inf : 1.0 / c0;
    }
  }
  throw std::invalid_argument("unknown scheme preset");
}

namespace {

// Chain velocity of the limiter family; the classical presets correspond to
// all limiters zero, where this reduces to -v.
double formula_chain_velocity(const schemes::Velocity& vel,
                              const schemes::LimiterSet& lim) {
  return vel.minus * (1.0 - lim.gamma4 + lim.gamma3) -
         vel.plus * (1.0 + lim.gamma1 - lim.gamma2);
}

}  // namespace

LocalConsistency local_consistency(const ChainMoments& m,
                                   const schemes::Velocity& vel,
                                   const schemes::LimiterSet& lim, double tau,
                                   double dx) {
  LocalConsistency out;
  const double scale = tau + dx;
  const double v_mc = formula_chain_velocity(vel, lim);
  out.residual = std::abs(m.drift - v_mc * tau) / scale;
  out.residual_vs_v = std::abs(m.drift - vel.value * tau) / scale;
  out.residual_vs_neg_v = std::abs(m.drift + vel.value * tau) / scale;
  out.chain_velocity = tau > 0.0 ? m.drift / tau : 0.0;
  out.flux_sum = vel.plus * (2.0 * (1.0 + 2.0 * lim.gamma2) + lim.gamma1 +
                             lim.gamma2) +
                 vel.minus * (lim.gamma3 + lim.gamma4) - vel.magnitude();
  return out;
}

double local_consistency_residual(const ChainMoments& m,
                                  const schemes::Velocity& vel, double tau,
                                  double dx, const schemes::LimiterSet& lim) {
  return local_consistency(m, vel, lim, tau, dx).residual;
}

GlobalConsistency global_consistency(const ChainMoments& m,
                                     const schemes::Velocity& vel,
                                     const schemes::LimiterSet& lim, double tau,
                                     double dx) {
  GlobalConsistency out;
  const double spread = vel.plus * (1.0 - lim.gamma1 - 3.0 * lim.gamma2) +
                        vel.minus * (1.0 + lim.gamma4 + 3.0 * lim.gamma3);
  const double v_mc = formula_chain_velocity(vel, lim);
  out.symbolic_covariance = tau * dx * spread - tau * tau * v_mc * v_mc;
  out.measured_covariance = m.covariance;
  out.residual =
      std::abs(out.measured_covariance - out.symbolic_covariance) / (tau + dx);
  return out;
}

double global_consistency_residual(const ChainMoments& m,
                                   const schemes::Velocity& vel, double tau,
                                   double dx, const schemes::LimiterSet& lim) {
  return global_consistency(m, vel, lim, tau, dx).residual;
}

double landau_constant(double velocity, double tau, double dx) {
  return 2.0 * tau * velocity / (tau + dx);
}

namespace {

struct LevelTables {
  TransitionTable interior;
  TransitionTable left;
  TransitionTable right;
  TransitionTable both;  // single-cell layer: both edge adjustments apply

  const TransitionTable& at(int index, int first, int last) const {
    if (first == last) return both;
    if (index == first) return left;
    if (index == last) return right;
    return interior;
  }
};

LevelTables level_tables(const schemes::SchemeConfig& cfg, double lambda) {
  using schemes::CellPosition;
  auto table_for = [&](CellPosition pos) {
    return transition_table(schemes::weights_from_fluxes(
        schemes::coefficients(cfg, lambda, pos), lambda));
  };
  LevelTables t;
  t.interior = table_for(CellPosition::Interior);
  t.left = table_for(CellPosition::LeftEdge);
  t.right = table_for(CellPosition::RightEdge);
  schemes::SchemeConfig trimmed = cfg;
  trimmed.limiters.gamma2 = 0.0;
  trimmed.limiters.gamma3 = 0.0;
  t.both = transition_table(schemes::weights_from_fluxes(
      schemes::coefficients(trimmed, lambda), lambda));
  return t;
}

void require_probabilistic(const schemes::SchemeConfig& cfg,
                           const LevelTables& tables, double lambda,
                           const char* where) {
  for (const TransitionTable* t :
       {&tables.interior, &tables.left, &tables.right, &tables.both}) {
    if (!t->probabilistic()) {
      schemes::StencilWeights w;
      w.w_m2 = t->p_m2;
      w.w_m1 = t->p_m1;
      w.w_0 = t->p_0;
      w.w_p1 = t->p_p1;
      w.w_p2 = t->p_p2;
      StabilityReport report = check_stability(
          w, schemes::Velocity(cfg.velocity), cfg.limiters, lambda);
      throw StabilityError(std::string(where) +
                               ": scheme is not probabilistic at lambda " +
                               std::to_string(lambda),
                           std::move(report));
    }
  }
}

int sample_offset(const TransitionTable& t, double u) {
  double acc = 0.0;
  const std::array<std::pair<int, double>, 5> entries{{{-2, t.p_m2},
                                                       {-1, t.p_m1},
                                                       {0, t.p_0},
                                                       {1, t.p_p1},
                                                       {2, t.p_p2}}};
  for (const auto& [offset, p] : entries) {
    acc += std::max(p, 0.0);
    if (u < acc) return offset;
  }
  return 2;
}

}  // namespace

std::vector<std::vector<double>> evolve_deterministic(
    std::span<const double> d0, const schemes::SchemeConfig& cfg,
    const grid::ConeGrid& g, int steps, bool strict) {
  if (d0.size() != static_cast<std::size_t>(g.initial_points()))
    throw std::invalid_argument(
        "evolve_deterministic: initial data must cover the initial layer");
  if (steps < 0 || steps > g.half_width())
    throw std::invalid_argument(
        "evolve_deterministic: steps must lie in 0..n");

  std::vector<std::vector<double>> layers;
  layers.reserve(steps + 1);
  layers.emplace_back(d0.begin(), d0.end());

  for (int j = 0; j < steps; ++j) {
    const double lambda = g.tau_levels()[j] / g.dx();
    const LevelTables tables = level_tables(cfg, lambda);
    if (strict)
      require_probabilistic(cfg, tables, lambda, "evolve_deterministic");

    const std::vector<double>& prev = layers.back();
    const std::size_t size = prev.size() - 2;
    std::vector<double> next(size);
    for (std::size_t k = 0; k < size; ++k) {
      const std::size_t i = k + 1;  // position within the previous layer
      const TransitionTable& t =
          tables.at(static_cast<int>(k), 0, static_cast<int>(size) - 1);
      double v = t.p_m1 * prev[i - 1] + t.p_0 * prev[i] + t.p_p1 * prev[i + 1];
      if (i >= 2) v += t.p_m2 * prev[i - 2];
      if (i + 2 < prev.size()) v += t.p_p2 * prev[i + 2];
      next[k] = v;
    }
    layers.push_back(std::move(next));
  }
  return layers;
}

McResult simulate_mc(int target_layer, int target_index,
                     std::span<const double> d0,
                     const schemes::SchemeConfig& cfg, const grid::ConeGrid& g,
                     std::size_t n_paths, std::uint64_t seed, int threads) {
  if (d0.size() != static_cast<std::size_t>(g.initial_points()))
    throw std::invalid_argument(
        "simulate_mc: initial data must cover the initial layer");
  if (target_layer < 0 || target_layer > g.half_width())
    throw std::invalid_argument("simulate_mc: target layer outside the cone");
  if (target_index < g.layer_first(target_layer) ||
      target_index > g.layer_last(target_layer))
    throw std::invalid_argument("simulate_mc: target index outside the layer");
  if (n_paths < 1)
    throw std::invalid_argument("simulate_mc: n_paths must be >= 1");
  if (threads < 1) threads = 1;

  std::vector<LevelTables> per_level(target_layer);
  for (int j = 0; j < target_layer; ++j) {
    const double lambda = g.tau_levels()[j] / g.dx();
    per_level[j] = level_tables(cfg, lambda);
    require_probabilistic(cfg, per_level[j], lambda, "simulate_mc");
  }

  std::vector<double> values(n_paths);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      CounterRng rng(seed, p);
      int i = target_index;
      for (int j = target_layer; j >= 1; --j) {
        const TransitionTable& t = per_level[j - 1].at(
            i, g.layer_first(j), g.layer_last(j));
        i += sample_offset(t, rng.next_unit());
      }
      values[p] = d0[static_cast<std::size_t>(i)];
    }
  };

  if (threads == 1 || n_paths < 2) {
    run_range(0, n_paths);
  } else {
    const std::size_t workers =
        std::min<std::size_t>(threads, n_paths);
    const std::size_t chunk = (n_paths + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(begin + chunk, n_paths);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  McResult r;
  r.estimate = kahan_sum(values) / static_cast<double>(n_paths);
  if (n_paths > 1) {
    std::vector<double> sq(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) {
      const double d = values[p] - r.estimate;
      sq[p] = d * d;
    }
    const double var =
        kahan_sum(sq) / static_cast<double>(n_paths - 1);
    r.std_error = std::sqrt(var / static_cast<double>(n_paths));
  }
  return r;
}

}  // namespace chainflux::markov
