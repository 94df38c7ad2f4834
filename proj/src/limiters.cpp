#include "chainflux/limiters.hpp"

#include <cmath>
#include <stdexcept>

namespace chainflux::limiters {

Quadratic gamma1_quadratic(double v_plus, double gamma2) {
  Quadratic q;
  q.a = v_plus;
  q.b = 2.0 * v_plus * (1.0 - gamma2) + 1.0;
  q.c = v_plus * (1.0 - gamma2) * (1.0 - gamma2) + 3.0 * gamma2 - 1.0;
  return q;
}

Quadratic gamma4_quadratic(double v_minus, double gamma3) {
  Quadratic q;
  q.a = v_minus;
  q.b = -(2.0 * v_minus * (1.0 + gamma3) + 1.0);
  q.c = v_minus * (1.0 + gamma3) * (1.0 + gamma3) - 1.0 - 3.0 * gamma3;
  return q;
}

LimiterSolution solve_gamma1(double v_plus, double gamma2) {
  if (!(v_plus > 0.0))
    throw std::invalid_argument("solve_gamma1: v_plus must be > 0");
  if (gamma2 > 0.0)
    throw std::invalid_argument("solve_gamma1: gamma2 must be <= 0");
  const double disc = 8.0 * v_plus + 1.0 - 16.0 * v_plus * gamma2;
  LimiterSolution s;
  s.branch = RootBranch::MinusRoot;
  s.gamma = -1.0 + gamma2 - (std::sqrt(disc) + 1.0) / (2.0 * v_plus);
  s.residual = gamma1_quadratic(v_plus, gamma2).eval(s.gamma);
  return s;
}

LimiterSolution solve_gamma4(double v_minus, double gamma3) {
  if (!(v_minus > 0.0))
    throw std::invalid_argument("solve_gamma4: v_minus must be > 0");
  if (gamma3 < 0.0)
    throw std::invalid_argument("solve_gamma4: gamma3 must be >= 0");
  const double disc = 8.0 * v_minus + 1.0 + 16.0 * v_minus * gamma3;
  LimiterSolution s;
  s.branch = RootBranch::PlusRoot;
  s.gamma = 1.0 + gamma3 + (std::sqrt(disc) + 1.0) / (2.0 * v_minus);
  s.residual = gamma4_quadratic(v_minus, gamma3).eval(s.gamma);
  return s;
}

double stability_equality_residual(const schemes::Velocity& vel,
                                   const schemes::LimiterSet& lim) {
  const double lhs =
      vel.plus * (1.0 - lim.gamma1 - 3.0 * lim.gamma2) +
      vel.minus * (1.0 + lim.gamma4 + 3.0 * lim.gamma3);
  const double root = vel.minus * (1.0 + lim.gamma3 - lim.gamma4) -
                      vel.plus * (1.0 + lim.gamma1 - lim.gamma2);
  return lhs - root * root;
}

}  // namespace chainflux::limiters
