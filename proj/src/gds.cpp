#include "chainflux/gds.hpp"

#include <stdexcept>

#include "chainflux/markov.hpp"

namespace chainflux::gds {

double field_mean(std::span<const double> field) {
  if (field.empty()) return 0.0;
  double sum = 0.0;
  for (double v : field) sum += v;
  return sum / static_cast<double>(field.size());
}

std::vector<TwoScaleState> evolve_two_scale(const TwoScaleState& init,
                                            const SlowRate& v0,
                                            const TwoScaleOptions& opt) {
  if (opt.substeps < 1)
    throw std::invalid_argument("evolve_two_scale: substeps must be >= 1");
  if (opt.n_slow < 0)
    throw std::invalid_argument("evolve_two_scale: n_slow must be >= 0");
  if (!(opt.fast_tau > 0.0) || !(opt.fast_dx > 0.0))
    throw std::invalid_argument(
        "evolve_two_scale: fast step sizes must be > 0");
  if (init.mu_field.size() < 5)
    throw std::invalid_argument(
        "evolve_two_scale: fast field must hold at least 5 cells");

  const double lambda = opt.fast_tau / opt.fast_dx;
  const schemes::FluxCoefficients fc = schemes::coefficients(opt.scheme, lambda);
  if (opt.strict) {
    const auto table =
        markov::transition_table(schemes::weights_from_fluxes(fc, lambda));
    if (!table.probabilistic()) {
      auto report = markov::check_stability(
          schemes::weights_from_fluxes(fc, lambda),
          schemes::Velocity(opt.scheme.velocity), opt.scheme.limiters, lambda);
      throw markov::StabilityError(
          "evolve_two_scale: fast scheme is not probabilistic",
          std::move(report));
    }
  }

  const Summary summarize = opt.summary ? opt.summary : Summary(field_mean);

  std::vector<TwoScaleState> trajectory;
  trajectory.reserve(opt.n_slow + 1);
  trajectory.push_back(init);

  TwoScaleState state = init;
  for (int k = 0; k < opt.n_slow; ++k) {
    state.h_slow +=
        opt.slow_step * v0(state.tau_slow, state.h_slow,
                           summarize(state.mu_field));
    for (int s = 0; s < opt.substeps; ++s) {
      state.mu_field = schemes::step(state.mu_field, fc, lambda,
                                     schemes::Boundary::Periodic);
      state.t_fast += opt.fast_tau;
    }
    state.tau_slow += opt.slow_step;
    trajectory.push_back(state);
  }
  return trajectory;
}

}  // namespace chainflux::gds
