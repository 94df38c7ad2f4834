#include "chainflux/problems.hpp"

#include <cmath>

namespace chainflux::problems {

ConservationLaw advection_law(double a) {
  ConservationLaw law;
  law.name = "advection";
  law.flux = [a](double u) { return a * u; };
  law.speed = [a](double) { return a; };
  law.constant_speed = a;
  return law;
}

ConservationLaw burgers_law() {
  ConservationLaw law;
  law.name = "burgers";
  law.flux = [](double u) { return 0.5 * u * u; };
  law.speed = [](double u) { return u; };
  return law;
}

double rankine_hugoniot_speed(const RiemannProblem& rp) {
  if (rp.u_left == rp.u_right)
    throw std::invalid_argument(
        "rankine_hugoniot_speed: states must differ across the jump");
  return (rp.law.flux(rp.u_right) - rp.law.flux(rp.u_left)) /
         (rp.u_right - rp.u_left);
}

bool entropy_admissible(const RiemannProblem& rp) {
  const double s = rankine_hugoniot_speed(rp);
  return rp.law.speed(rp.u_right) < s && s < rp.law.speed(rp.u_left);
}

DiscontinuityType classify_discontinuity(const RiemannProblem& rp) {
  if (entropy_admissible(rp)) return DiscontinuityType::Shock;
  const double s = rankine_hugoniot_speed(rp);
  const double al = rp.law.speed(rp.u_left);
  const double ar = rp.law.speed(rp.u_right);
  const double scale = 1.0 + std::abs(al) + std::abs(ar);
  if (std::abs(al - ar) <= 1e-12 * scale && std::abs(al - s) <= 1e-12 * scale)
    return DiscontinuityType::Contact;
  return DiscontinuityType::Rarefaction;
}

double exact_solution(const RiemannProblem& rp, double x, double t) {
  if (t < 0.0)
    throw std::invalid_argument("exact_solution: time must be nonnegative");
  if (rp.law.constant_speed) {
    const double a = *rp.law.constant_speed;
    return (x - a * t) < rp.x_jump ? rp.u_left : rp.u_right;
  }
  if (rp.law.name != "burgers")
    throw UnsupportedProblemError(
        "exact_solution: only linear laws and Burgers Riemann data are "
        "supported");
  if (rp.u_left > rp.u_right) {
    const double s = rankine_hugoniot_speed(rp);
    return x < rp.x_jump + s * t ? rp.u_left : rp.u_right;
  }
  // Rarefaction fan between the two characteristic speeds.
  const double al = rp.law.speed(rp.u_left);
  const double ar = rp.law.speed(rp.u_right);
  if (t == 0.0) return x < rp.x_jump ? rp.u_left : rp.u_right;
  if (x <= rp.x_jump + al * t) return rp.u_left;
  if (x >= rp.x_jump + ar * t) return rp.u_right;
  return (x - rp.x_jump) / t;
}

double exact_solution(const CauchyProblem& cp, double x, double t) {
  if (t < 0.0)
    throw std::invalid_argument("exact_solution: time must be nonnegative");
  if (!cp.law.constant_speed)
    throw UnsupportedProblemError(
        "exact_solution: general Cauchy data needs a linear law");
  return cp.initial(x - *cp.law.constant_speed * t);
}

double l1_error(std::span<const double> numeric, std::span<const double> exact,
                double dx) {
  if (numeric.size() != exact.size())
    throw std::invalid_argument("l1_error: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i)
    sum += std::abs(numeric[i] - exact[i]);
  return dx * sum;
}

}  // namespace chainflux::problems
