#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace chainflux::schemes {

// Signed advection speed split into its nonnegative parts. At most one of
// plus/minus is nonzero, plus - minus == value and plus + minus == |value|.
struct Velocity {
  double value = 0.0;
  double plus = 0.0;   // max(v, 0)
  double minus = 0.0;  // max(-v, 0)

  Velocity() = default;
  explicit Velocity(double v)
      : value(v), plus(v > 0.0 ? v : 0.0), minus(v < 0.0 ? -v : 0.0) {}

  double magnitude() const { return plus + minus; }
};

// Constant flux limiters. gamma1 and gamma2 are non-positive, gamma3 and
// gamma4 non-negative.
struct LimiterSet {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double gamma4 = 0.0;

  bool signs_valid() const {
    return gamma1 <= 0.0 && gamma2 <= 0.0 && gamma3 >= 0.0 && gamma4 >= 0.0;
  }
};

// Per-cell flux weights of the general explicit family. The tilde variants
// carry the outermost stencil contributions; for the velocity-independent
// presets they equal their plain counterparts.
struct FluxCoefficients {
  double b_prev = 0.0;    // weight of u_{j-1} in the right flux
  double b_center = 0.0;  // weight of u_j
  double b_next = 0.0;    // weight of u_{j+1}
  double b_far = 0.0;     // weight of u_{j+2}
  double bt_prev = 0.0;   // tilde weight of u_{j-2} in the left flux
  double bt_far = 0.0;    // tilde weight of u_{j+2} in the right flux

  // Plain column sum; for the classical presets this equals the advection
  // speed and drives the local consistency report.
  double sum() const { return b_prev + b_center + b_next + b_far; }
};

// Multipliers of u_{j-2}..u_{j+2} in one explicit update.
struct StencilWeights {
  double w_m2 = 0.0;
  double w_m1 = 0.0;
  double w_0 = 1.0;
  double w_p1 = 0.0;
  double w_p2 = 0.0;

  double sum() const { return w_m2 + w_m1 + w_0 + w_p1 + w_p2; }
};

// Assembles the five stencil multipliers from flux coefficients. The center
// weight is 1 - lambda*(b_center - b_next); with that orientation the five
// weights telescope to one whenever the tilde coefficients equal the plain
// ones.
StencilWeights weights_from_fluxes(const FluxCoefficients& fc, double lambda);

FluxCoefficients preset_centered_euler(double a);
FluxCoefficients preset_lax_friedrichs(double a, double lambda);
FluxCoefficients preset_upwind(double a);
FluxCoefficients preset_lax_wendroff(double a, double lambda);

// Five-point upwind scheme with constant flux limiters. The assembled
// stencil weights reproduce the limiter update verbatim for every
// admissible limiter set.
FluxCoefficients preset_limiter_scheme(const Velocity& vel,
                                       const LimiterSet& lim);

enum class Preset {
  CenteredEuler,
  LaxFriedrichs,
  Upwind,
  LaxWendroff,
  Limiter,
};

Preset preset_from_name(std::string_view name);
std::string_view preset_name(Preset p);

// Where a cell sits in a shrinking cone layer. Edge cells drop the stencil
// term that would otherwise read outside the cone: the left edge zeroes
// gamma2 (and the u_{j-2} column), the right edge gamma3 (u_{j+2}).
enum class CellPosition { Interior, LeftEdge, RightEdge };

struct SchemeConfig {
  Preset preset = Preset::Upwind;
  double velocity = 1.0;  // a for the classical presets, v for the limiter
  LimiterSet limiters{};
};

FluxCoefficients coefficients(const SchemeConfig& cfg, double lambda,
                              CellPosition pos = CellPosition::Interior);

// Same, with the speed overridden (frozen-coefficient linearization for
// nonlinear problems).
FluxCoefficients coefficients_at_speed(const SchemeConfig& cfg, double speed,
                                       double lambda,
                                       CellPosition pos = CellPosition::Interior);

enum class Boundary { Cone, Periodic };

// Frozen per-cell speeds for a nonlinear law: a(u_i) at each cell, optionally
// averaged with the left neighbour. The averaged form makes the upwind
// update conservative for convex fluxes on nonnegative data.
std::vector<double> frozen_speeds(const std::function<double(double)>& speed_of,
                                  std::span<const double> u,
                                  bool average_with_left, Boundary boundary);

// One coefficient column per cell at the given speeds, with cone edge
// positions applied to the cells step() keeps.
std::vector<FluxCoefficients> per_cell_coefficients(
    const SchemeConfig& cfg, std::span<const double> speeds, double lambda,
    Boundary boundary);

// One explicit time step. Coefficients are given per cell (fc must match u
// in length); the optional source is added as tau * f per cell after the
// stencil combination. In cone mode the result is one cell shorter at each
// end and the surviving edge cells fold their outermost term into the
// nearest neighbour, keeping the weights normalized.
std::vector<double> step(std::span<const double> u,
                         std::span<const FluxCoefficients> fc, double lambda,
                         Boundary boundary, std::span<const double> source = {},
                         double tau = 0.0);

// Spatially constant coefficients.
std::vector<double> step(std::span<const double> u, const FluxCoefficients& fc,
                         double lambda, Boundary boundary,
                         std::span<const double> source = {}, double tau = 0.0);

}  // namespace chainflux::schemes
