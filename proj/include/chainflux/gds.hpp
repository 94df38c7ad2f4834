#pragma once

#include <functional>
#include <span>
#include <vector>

#include "chainflux/schemes.hpp"

namespace chainflux::gds {

// Coupled two-scale state: a slow scalar trajectory driven by an explicit
// Euler update and a fast transport field advanced by the scheme machinery
// on a wrap-around grid.
struct TwoScaleState {
  double h_slow = 0.0;
  std::vector<double> mu_field;
  double tau_slow = 0.0;
  double t_fast = 0.0;
};

// Rate of the slow corrections; sees the current slow time, the slow value
// and a scalar summary of the fast field.
using SlowRate = std::function<double(double tau, double h, double mu)>;

// Summary functional reducing the fast field to the scalar the slow
// equation sees. Defaults to the mean.
using Summary = std::function<double(std::span<const double>)>;

struct TwoScaleOptions {
  schemes::SchemeConfig scheme{};
  double fast_tau = 0.0;
  double fast_dx = 0.0;
  double slow_step = 0.0;
  int substeps = 1;
  int n_slow = 0;
  bool strict = true;
  Summary summary{};  // empty -> mean of the field
};

double field_mean(std::span<const double> field);

// Per slow step: advance h by slow_step * v0(tau, h, summary(mu)), then run
// `substeps` fast transport steps. Returns the trajectory including the
// initial state.
std::vector<TwoScaleState> evolve_two_scale(const TwoScaleState& init,
                                            const SlowRate& v0,
                                            const TwoScaleOptions& opt);

}  // namespace chainflux::gds
