#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "chainflux/gds.hpp"
#include "chainflux/markov.hpp"
#include "chainflux/rng.hpp"

using namespace chainflux;
using gds::TwoScaleOptions;
using gds::TwoScaleState;

namespace {

TwoScaleOptions upwind_options(int n_slow, int substeps = 1) {
  TwoScaleOptions opt;
  opt.scheme.preset = schemes::Preset::Upwind;
  opt.scheme.velocity = 1.0;
  opt.fast_dx = 0.1;
  opt.fast_tau = 0.05;
  opt.slow_step = 0.1;
  opt.substeps = substeps;
  opt.n_slow = n_slow;
  return opt;
}

TwoScaleState initial_state(std::vector<double> mu, double h0 = 0.0) {
  TwoScaleState s;
  s.h_slow = h0;
  s.mu_field = std::move(mu);
  return s;
}

}  // namespace

TEST_CASE("decoupled slow scale stays put while the field moves") {
  CounterRng rng(31, 0);
  std::vector<double> mu(16);
  for (auto& v : mu) v = rng.next_unit();
  const auto traj = gds::evolve_two_scale(
      initial_state(mu, 1.5), [](double, double, double) { return 0.0; },
      upwind_options(10));
  REQUIRE(traj.size() == 11);
  for (const auto& s : traj) CHECK(s.h_slow == 1.5);
  CHECK(traj.back().mu_field != mu);
}

TEST_CASE("constant rate integrates to linear growth") {
  const auto traj = gds::evolve_two_scale(
      initial_state(std::vector<double>(8, 0.0)),
      [](double, double, double) { return 1.0; }, upwind_options(10));
  CHECK(traj.back().h_slow == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(traj.back().tau_slow == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean-coupled rate with a constant field is exact") {
  const double c = 0.8;
  const auto traj = gds::evolve_two_scale(
      initial_state(std::vector<double>(8, c)),
      [](double, double, double mu) { return mu; }, upwind_options(10));
  // constant preservation keeps the mean at c, so h solves h' = c
  CHECK(traj.back().h_slow == doctest::Approx(c * 1.0).epsilon(1e-12));
  for (const auto& s : traj)
    for (double v : s.mu_field)
      CHECK(v == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("field-independent rates reproduce explicit Euler bit for bit") {
  auto rate = [](double tau, double h, double) { return 0.3 * h + tau; };
  const auto opt = upwind_options(25, 2);
  const auto traj = gds::evolve_two_scale(
      initial_state(std::vector<double>(8, 0.0), 0.7), rate, opt);

  double h = 0.7, tau = 0.0;
  for (int k = 0; k < opt.n_slow; ++k) {
    h += opt.slow_step * rate(tau, h, 0.0);
    tau += opt.slow_step;
    CHECK(traj[k + 1].h_slow == h);
  }
}

TEST_CASE("fast-field invariants hold inside the coupled loop") {
  CounterRng rng(37, 0);
  std::vector<double> mu(32);
  double before = 0.0;
  for (auto& v : mu) before += (v = rng.next_unit());
  const auto traj = gds::evolve_two_scale(
      initial_state(mu), [](double, double, double) { return 0.0; },
      upwind_options(20, 3));
  double after = 0.0;
  for (double v : traj.back().mu_field) after += v;
  CHECK(std::abs(after - before) <= 1e-9);
}

TEST_CASE("two-scale argument validation and strictness") {
  auto zero = [](double, double, double) { return 0.0; };

  auto bad = upwind_options(5);
  bad.substeps = 0;
  CHECK_THROWS_AS(
      gds::evolve_two_scale(initial_state(std::vector<double>(8, 0.0)), zero,
                            bad),
      std::invalid_argument);

  auto tiny = upwind_options(5);
  CHECK_THROWS_AS(
      gds::evolve_two_scale(initial_state(std::vector<double>(3, 0.0)), zero,
                            tiny),
      std::invalid_argument);

  auto unstable = upwind_options(5);
  unstable.scheme.preset = schemes::Preset::LaxWendroff;
  CHECK_THROWS_AS(
      gds::evolve_two_scale(initial_state(std::vector<double>(8, 0.0)), zero,
                            unstable),
      markov::StabilityError);
  unstable.strict = false;
  CHECK_NOTHROW(gds::evolve_two_scale(
      initial_state(std::vector<double>(8, 0.0)), zero, unstable));
}
