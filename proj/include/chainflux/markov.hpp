#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chainflux/grid.hpp"
#include "chainflux/schemes.hpp"

namespace chainflux::markov {

// Probabilities of jumping to x-2h, x-h, x, x+h, x+2h in the old layer,
// viewed from the new-layer point.
struct TransitionTable {
  double p_m2 = 0.0;
  double p_m1 = 0.0;
  double p_0 = 1.0;
  double p_p1 = 0.0;
  double p_p2 = 0.0;

  double sum() const { return p_m2 + p_m1 + p_0 + p_p1 + p_p2; }

  bool probabilistic(double tol = 1e-14) const {
    return p_m2 >= -tol && p_m1 >= -tol && p_0 >= -tol && p_p1 >= -tol &&
           p_p2 >= -tol;
  }

  double entry(int offset) const;
};

struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads stencil weights as a jump law. Throws InconsistencyError when the
// weights fail to sum to one beyond 1e-9.
TransitionTable transition_table(const schemes::StencilWeights& w);

struct ChainMoments {
  double drift = 0.0;          // E[dx] per step, length units
  double second_moment = 0.0;  // E[dx^2] per step
  double covariance = 0.0;     // second_moment - drift^2
};

ChainMoments chain_moments(const TransitionTable& t, double dx, double tau);

struct StabilityReport {
  bool probabilistic = false;
  std::vector<std::pair<int, double>> violated_entries;  // (offset, value)
  double cfl_bound = 0.0;  // largest admissible lambda; +inf when unbounded
  bool limiter_feasible = false;
};

// Sign check of the five entries, the largest admissible lambda for the
// weight family scaled linearly in lambda, and the limiter feasibility
// conditions (including the covariance bound) at the supplied lambda.
// Reports, never throws.
StabilityReport check_stability(const schemes::StencilWeights& w,
                                const schemes::Velocity& vel,
                                const schemes::LimiterSet& lim, double lambda);

// Largest lambda with nonnegative weights for a preset, accounting for
// coefficients that themselves depend on lambda. Lax-Wendroff admits the
// single point lambda = 1/|a|; centered Euler admits none for a != 0.
double preset_cfl_bound(const schemes::SchemeConfig& cfg);

struct LocalConsistency {
  double residual = 0.0;          // against the scheme's own chain velocity
  double residual_vs_v = 0.0;     // against +v
  double residual_vs_neg_v = 0.0; // against -v
  double chain_velocity = 0.0;    // drift / tau
  double flux_sum = 0.0;          // aggregate of the four flux columns
};

LocalConsistency local_consistency(const ChainMoments& m,
                                   const schemes::Velocity& vel,
                                   const schemes::LimiterSet& lim, double tau,
                                   double dx);

double local_consistency_residual(const ChainMoments& m,
                                  const schemes::Velocity& vel, double tau,
                                  double dx,
                                  const schemes::LimiterSet& lim = {});

struct GlobalConsistency {
  double residual = 0.0;
  double measured_covariance = 0.0;
  double symbolic_covariance = 0.0;
};

GlobalConsistency global_consistency(const ChainMoments& m,
                                     const schemes::Velocity& vel,
                                     const schemes::LimiterSet& lim, double tau,
                                     double dx);

double global_consistency_residual(const ChainMoments& m,
                                   const schemes::Velocity& vel, double tau,
                                   double dx,
                                   const schemes::LimiterSet& lim = {});

// Prelimit ratio 2 tau v / (tau + dx) entering the CFL-type consistency
// bound; evaluated at the supplied discretization, the refinement limit is
// the caller's business.
double landau_constant(double velocity, double tau, double dx);

struct StabilityError : std::runtime_error {
  StabilityError(const std::string& what, StabilityReport r)
      : std::runtime_error(what), report(std::move(r)) {}
  StabilityReport report;
};

// Marches the initial layer through the cone. Layer j+1 values are exactly
// the transition-table expectations of layer j values. In strict mode a
// non-probabilistic table raises StabilityError carrying the report.
std::vector<std::vector<double>> evolve_deterministic(
    std::span<const double> d0, const schemes::SchemeConfig& cfg,
    const grid::ConeGrid& g, int steps, bool strict = true);

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Backward-chain Monte Carlo estimate of the deterministic value at a cone
// point: paths start at (target_layer, target_index) and jump down to the
// initial layer, averaging d0 at the landing sites. Paths are keyed by
// (seed, path index), and the reduction runs in fixed path order, so the
// result is bit-identical for any thread count.
McResult simulate_mc(int target_layer, int target_index,
                     std::span<const double> d0,
                     const schemes::SchemeConfig& cfg, const grid::ConeGrid& g,
                     std::size_t n_paths, std::uint64_t seed, int threads = 1);

}  // namespace chainflux::markov
