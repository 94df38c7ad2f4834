#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace chainflux::problems {

struct UnsupportedProblemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalar conservation law u_t + F(u)_x = 0 with characteristic speed
// a(u) = F'(u). constant_speed is set for linear laws and unlocks the
// translation oracle.
struct ConservationLaw {
  std::string name;
  std::function<double(double)> flux;
  std::function<double(double)> speed;
  std::optional<double> constant_speed;
};

ConservationLaw advection_law(double a);
ConservationLaw burgers_law();

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

struct CauchyProblem {
  ConservationLaw law;
  std::function<double(double)> initial;
  Interval domain{};
  double horizon = 1.0;
};

// Piecewise-constant Cauchy data with a single jump.
struct RiemannProblem {
  ConservationLaw law;
  double u_left = 0.0;
  double u_right = 0.0;
  double x_jump = 0.0;
};

// Jump speed (F(u_right) - F(u_left)) / (u_right - u_left).
double rankine_hugoniot_speed(const RiemannProblem& rp);

// Strict entropy inequality a(u_right) < s < a(u_left). Contact
// discontinuities (linear flux) report false by the strictness.
bool entropy_admissible(const RiemannProblem& rp);

enum class DiscontinuityType { Shock, Rarefaction, Contact };
DiscontinuityType classify_discontinuity(const RiemannProblem& rp);

// Exact solutions: admissible shock, rarefaction fan, or (for linear laws)
// plain translation. Unsupported combinations raise UnsupportedProblemError.
double exact_solution(const RiemannProblem& rp, double x, double t);
double exact_solution(const CauchyProblem& cp, double x, double t);

// Cell-weighted discrete L1 norm of the difference.
double l1_error(std::span<const double> numeric, std::span<const double> exact,
                double dx);

}  // namespace chainflux::problems
