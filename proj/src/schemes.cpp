#include "chainflux/schemes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chainflux::schemes {

StencilWeights weights_from_fluxes(const FluxCoefficients& fc, double lambda) {
  StencilWeights w;
  w.w_m2 = lambda * fc.bt_prev;
  w.w_m1 = lambda * (fc.b_center - fc.b_prev);
  w.w_0 = 1.0 - lambda * (fc.b_center - fc.b_next);
  w.w_p1 = lambda * (fc.b_far - fc.b_next);
  w.w_p2 = -lambda * fc.bt_far;
  return w;
}

FluxCoefficients preset_centered_euler(double a) {
  FluxCoefficients fc;
  fc.b_center = 0.5 * a;
  fc.b_next = 0.5 * a;
  return fc;
}

FluxCoefficients preset_lax_friedrichs(double a, double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("preset_lax_friedrichs: lambda must be > 0");
  FluxCoefficients fc;
  fc.b_center = 0.5 * a + 0.5 / lambda;
  fc.b_next = 0.5 * a - 0.5 / lambda;
  return fc;
}

FluxCoefficients preset_upwind(double a) {
  FluxCoefficients fc;
  fc.b_center = 0.5 * (a + std::abs(a));
  fc.b_next = 0.5 * (a - std::abs(a));
  return fc;
}

FluxCoefficients preset_lax_wendroff(double a, double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("preset_lax_wendroff: lambda must be > 0");
  FluxCoefficients fc;
  fc.b_center = 0.5 * a + 0.5 * lambda * a * a;
  fc.b_next = 0.5 * a - 0.5 * lambda * a * a;
  return fc;
}

FluxCoefficients preset_limiter_scheme(const Velocity& vel,
                                       const LimiterSet& lim) {
  if (!lim.signs_valid())
    throw std::invalid_argument(
        "preset_limiter_scheme: gamma1, gamma2 must be <= 0 and gamma3, "
        "gamma4 >= 0");
  const double vp = vel.plus;
  const double vm = vel.minus;
  FluxCoefficients fc;
  fc.b_prev = 0.0;
  fc.bt_prev = -vp * lim.gamma2;
  fc.b_center = vp * (1.0 + lim.gamma2) + vm * lim.gamma4;
  fc.b_next = vp * (lim.gamma1 + lim.gamma2) - vm;
  fc.b_far = vp * lim.gamma2 - vm * lim.gamma3;
  fc.bt_far = -vm * lim.gamma3;
  return fc;
}

Preset preset_from_name(std::string_view name) {
  if (name == "centered-euler") return Preset::CenteredEuler;
  if (name == "lax-friedrichs") return Preset::LaxFriedrichs;
  if (name == "upwind") return Preset::Upwind;
  if (name == "lax-wendroff") return Preset::LaxWendroff;
  if (name == "limiter") return Preset::Limiter;
  throw std::invalid_argument("unknown scheme preset: " + std::string(name));
}

std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::CenteredEuler: return "centered-euler";
    case Preset::LaxFriedrichs: return "lax-friedrichs";
    case Preset::Upwind: return "upwind";
    case Preset::LaxWendroff: return "lax-wendroff";
    case Preset::Limiter: return "limiter";
  }
  throw std::invalid_argument("unknown scheme preset");
}

FluxCoefficients coefficients_at_speed(const SchemeConfig& cfg, double speed,
                                       double lambda, CellPosition pos) {
  switch (cfg.preset) {
    case Preset::CenteredEuler: return preset_centered_euler(speed);
    case Preset::LaxFriedrichs: return preset_lax_friedrichs(speed, lambda);
    case Preset::Upwind: return preset_upwind(speed);
    case Preset::LaxWendroff: return preset_lax_wendroff(speed, lambda);
    case Preset::Limiter: {
      LimiterSet lim = cfg.limiters;
      if (pos == CellPosition::LeftEdge) lim.gamma2 = 0.0;
      if (pos == CellPosition::RightEdge) lim.gamma3 = 0.0;
      return preset_limiter_scheme(Velocity(speed), lim);
    }
  }
  throw std::invalid_argument("unknown scheme preset");
}

FluxCoefficients coefficients(const SchemeConfig& cfg, double lambda,
                              CellPosition pos) {
  return coefficients_at_speed(cfg, cfg.velocity, lambda, pos);
}

std::vector<double> step(std::span<const double> u,
                         std::span<const FluxCoefficients> fc, double lambda,
                         Boundary boundary, std::span<const double> source,
                         double tau) {
  const std::size_t n = u.size();
  if (n < 5)
    throw std::invalid_argument("step: state must hold at least 5 cells");
  if (fc.size() != n)
    throw std::invalid_argument("step: one coefficient set per cell required");
  if (!source.empty() && source.size() != n)
    throw std::invalid_argument("step: source length must match the state");
  if (!(lambda > 0.0)) throw std::invalid_argument("step: lambda must be > 0");

  std::vector<double> out;
  if (boundary == Boundary::Periodic) {
    out.resize(n);
    const auto m = static_cast<long>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const StencilWeights w = weights_from_fluxes(fc[i], lambda);
      auto at = [&](long k) {
        long r = k % m;
        if (r < 0) r += m;
        return u[static_cast<std::size_t>(r)];
      };
      const long j = static_cast<long>(i);
      double v = w.w_m2 * at(j - 2) + w.w_m1 * at(j - 1) + w.w_0 * at(j) +
                 w.w_p1 * at(j + 1) + w.w_p2 * at(j + 2);
      if (!source.empty()) v += tau * source[i];
      out[i] = v;
    }
    return out;
  }

  // Cone: the output drops one cell at each end. The surviving edge cells
  // fold the term that would read outside the input into the nearest
  // neighbour, which is the same as zeroing the corresponding limiter and
  // keeps the weights normalized.
  out.resize(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    StencilWeights w = weights_from_fluxes(fc[i], lambda);
    if (i == 1) {
      w.w_m1 += w.w_m2;
      w.w_m2 = 0.0;
    }
    if (i == n - 2) {
      w.w_p1 += w.w_p2;
      w.w_p2 = 0.0;
    }
    double v = w.w_m1 * u[i - 1] + w.w_0 * u[i] + w.w_p1 * u[i + 1];
    if (i >= 2) v += w.w_m2 * u[i - 2];
    if (i + 2 < n) v += w.w_p2 * u[i + 2];
    if (!source.empty()) v += tau * source[i];
    out[i - 1] = v;
  }
  return out;
}

std::vector<double> step(std::span<const double> u, const FluxCoefficients& fc,
                         double lambda, Boundary boundary,
                         std::span<const double> source, double tau) {
  std::vector<FluxCoefficients> per_cell(u.size(), fc);
  return step(u, per_cell, lambda, boundary, source, tau);
}

std::vector<double> frozen_speeds(const std::function<double(double)>& speed_of,
                                  std::span<const double> u,
                                  bool average_with_left, Boundary boundary) {
  const std::size_t n = u.size();
  std::vector<double> speeds(n);
  for (std::size_t i = 0; i < n; ++i) speeds[i] = speed_of(u[i]);
  if (!average_with_left) return speeds;
  std::vector<double> avg(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t left = i;
    if (i > 0)
      left = i - 1;
    else if (boundary == Boundary::Periodic)
      left = n - 1;
    avg[i] = 0.5 * (speeds[left] + speeds[i]);
  }
  return avg;
}

std::vector<FluxCoefficients> per_cell_coefficients(
    const SchemeConfig& cfg, std::span<const double> speeds, double lambda,
    Boundary boundary) {
  const std::size_t n = speeds.size();
  std::vector<FluxCoefficients> fc(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (boundary == Boundary::Cone && i == 1 && i == n - 2) {
      // single surviving cell: both edge adjustments apply
      SchemeConfig trimmed = cfg;
      trimmed.limiters.gamma2 = 0.0;
      trimmed.limiters.gamma3 = 0.0;
      fc[i] = coefficients_at_speed(trimmed, speeds[i], lambda);
      continue;
    }
    CellPosition pos = CellPosition::Interior;
    if (boundary == Boundary::Cone) {
      if (i == 1) pos = CellPosition::LeftEdge;
      if (i == n - 2) pos = CellPosition::RightEdge;
    }
    fc[i] = coefficients_at_speed(cfg, speeds[i], lambda, pos);
  }
  return fc;
}

}  // namespace chainflux::schemes
