#pragma once

#include "chainflux/schemes.hpp"

namespace chainflux::limiters {

enum class RootBranch { MinusRoot, PlusRoot };

struct LimiterSolution {
  double gamma = 0.0;
  double residual = 0.0;  // defining quadratic evaluated at the root
  RootBranch branch = RootBranch::MinusRoot;
};

// Solves the stability-equality quadratic for gamma1 at positive velocity.
// Takes the minus branch, the one with gamma1 <= 0; the trivial root is
// rejected. Degenerates as v_plus -> 0, which is an error (use the
// gamma4 solver for the opposite flow direction).
LimiterSolution solve_gamma1(double v_plus, double gamma2);

// Mirror solver for gamma4 at negative velocity; plus branch, gamma4 >= 0.
LimiterSolution solve_gamma4(double v_minus, double gamma3);

// LHS - RHS of the stability equality that ties the covariance spread to
// the squared chain velocity. Zero at the solved limiters.
double stability_equality_residual(const schemes::Velocity& vel,
                                   const schemes::LimiterSet& lim);

// Coefficients (a, b, c) of a*g^2 + b*g + c for the two defining quadratics;
// exposed so independent root finders can cross-check the closed forms.
struct Quadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double eval(double g) const { return (a * g + b) * g + c; }
};

Quadratic gamma1_quadratic(double v_plus, double gamma2);
Quadratic gamma4_quadratic(double v_minus, double gamma3);

}  // namespace chainflux::limiters
