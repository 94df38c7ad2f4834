#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chainflux/fnn.hpp"
#include "chainflux/gds.hpp"
#include "chainflux/grid.hpp"
#include "chainflux/limiters.hpp"
#include "chainflux/markov.hpp"
#include "chainflux/problems.hpp"
#include "chainflux/schemes.hpp"

namespace py = pybind11;
using namespace chainflux;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Explicit conservation-law schemes as Markov chain transition "
            "tables: assembly, stability checks, limiter solvers and Monte "
            "Carlo cross-validation.";

  // schemes
  py::class_<schemes::Velocity>(m, "Velocity")
      .def(py::init<double>())
      .def_readonly("value", &schemes::Velocity::value)
      .def_readonly("plus", &schemes::Velocity::plus)
      .def_readonly("minus", &schemes::Velocity::minus)
      .def_property_readonly("magnitude", &schemes::Velocity::magnitude);

  py::class_<schemes::LimiterSet>(m, "LimiterSet")
      .def(py::init([](double g1, double g2, double g3, double g4) {
             return schemes::LimiterSet{g1, g2, g3, g4};
           }),
           py::arg("gamma1") = 0.0, py::arg("gamma2") = 0.0,
           py::arg("gamma3") = 0.0, py::arg("gamma4") = 0.0)
      .def_readwrite("gamma1", &schemes::LimiterSet::gamma1)
      .def_readwrite("gamma2", &schemes::LimiterSet::gamma2)
      .def_readwrite("gamma3", &schemes::LimiterSet::gamma3)
      .def_readwrite("gamma4", &schemes::LimiterSet::gamma4)
      .def("signs_valid", &schemes::LimiterSet::signs_valid);

  py::class_<schemes::FluxCoefficients>(m, "FluxCoefficients")
      .def(py::init<>())
      .def_readwrite("b_prev", &schemes::FluxCoefficients::b_prev)
      .def_readwrite("b_center", &schemes::FluxCoefficients::b_center)
      .def_readwrite("b_next", &schemes::FluxCoefficients::b_next)
      .def_readwrite("b_far", &schemes::FluxCoefficients::b_far)
      .def_readwrite("bt_prev", &schemes::FluxCoefficients::bt_prev)
      .def_readwrite("bt_far", &schemes::FluxCoefficients::bt_far)
      .def("sum", &schemes::FluxCoefficients::sum);

  py::class_<schemes::StencilWeights>(m, "StencilWeights")
      .def_readonly("w_m2", &schemes::StencilWeights::w_m2)
      .def_readonly("w_m1", &schemes::StencilWeights::w_m1)
      .def_readonly("w_0", &schemes::StencilWeights::w_0)
      .def_readonly("w_p1", &schemes::StencilWeights::w_p1)
      .def_readonly("w_p2", &schemes::StencilWeights::w_p2)
      .def("sum", &schemes::StencilWeights::sum)
      .def("as_tuple", [](const schemes::StencilWeights& w) {
        return py::make_tuple(w.w_m2, w.w_m1, w.w_0, w.w_p1, w.w_p2);
      });

  py::enum_<schemes::Preset>(m, "Preset")
      .value("CENTERED_EULER", schemes::Preset::CenteredEuler)
      .value("LAX_FRIEDRICHS", schemes::Preset::LaxFriedrichs)
      .value("UPWIND", schemes::Preset::Upwind)
      .value("LAX_WENDROFF", schemes::Preset::LaxWendroff)
      .value("LIMITER", schemes::Preset::Limiter);

  py::class_<schemes::SchemeConfig>(m, "SchemeConfig")
      .def(py::init([](schemes::Preset preset, double velocity,
                       schemes::LimiterSet limiters) {
             return schemes::SchemeConfig{preset, velocity, limiters};
           }),
           py::arg("preset"), py::arg("velocity") = 1.0,
           py::arg("limiters") = schemes::LimiterSet{})
      .def_readwrite("preset", &schemes::SchemeConfig::preset)
      .def_readwrite("velocity", &schemes::SchemeConfig::velocity)
      .def_readwrite("limiters", &schemes::SchemeConfig::limiters);

  m.def("preset_from_name", &schemes::preset_from_name);
  m.def("weights_from_fluxes", &schemes::weights_from_fluxes, py::arg("fc"),
        py::arg("lam"));
  m.def("preset_centered_euler", &schemes::preset_centered_euler);
  m.def("preset_lax_friedrichs", &schemes::preset_lax_friedrichs);
  m.def("preset_upwind", &schemes::preset_upwind);
  m.def("preset_lax_wendroff", &schemes::preset_lax_wendroff);
  m.def("preset_limiter_scheme", &schemes::preset_limiter_scheme);
  m.def(
      "step",
      [](const std::vector<double>& u, const schemes::FluxCoefficients& fc,
         double lam, bool periodic, const std::vector<double>& source,
         double tau) {
        return schemes::step(u, fc, lam,
                             periodic ? schemes::Boundary::Periodic
                                      : schemes::Boundary::Cone,
                             source, tau);
      },
      py::arg("u"), py::arg("fc"), py::arg("lam"), py::arg("periodic") = true,
      py::arg("source") = std::vector<double>{}, py::arg("tau") = 0.0);

  // grid
  py::class_<grid::ConeGrid>(m, "ConeGrid")
      .def_property_readonly("half_width", &grid::ConeGrid::half_width)
      .def_property_readonly("initial_points", &grid::ConeGrid::initial_points)
      .def_property_readonly("dx", &grid::ConeGrid::dx)
      .def("layer_first", &grid::ConeGrid::layer_first)
      .def("layer_last", &grid::ConeGrid::layer_last)
      .def("layer_size", &grid::ConeGrid::layer_size)
      .def("time_at", &grid::ConeGrid::time_at)
      .def("x_at", &grid::ConeGrid::x_at)
      .def_property_readonly("apex_x", &grid::ConeGrid::apex_x);

  m.def("build_cone", &grid::build_cone, py::arg("half_width"), py::arg("dx"),
        py::arg("tau"), py::arg("x_left") = 0.0, py::arg("t_start") = 0.0);
  m.def("layer_points", &grid::layer_points);

  // markov
  py::class_<markov::TransitionTable>(m, "TransitionTable")
      .def_readonly("p_m2", &markov::TransitionTable::p_m2)
      .def_readonly("p_m1", &markov::TransitionTable::p_m1)
      .def_readonly("p_0", &markov::TransitionTable::p_0)
      .def_readonly("p_p1", &markov::TransitionTable::p_p1)
      .def_readonly("p_p2", &markov::TransitionTable::p_p2)
      .def("sum", &markov::TransitionTable::sum)
      .def("probabilistic", &markov::TransitionTable::probabilistic,
           py::arg("tol") = 1e-14)
      .def("entry", &markov::TransitionTable::entry);

  py::class_<markov::ChainMoments>(m, "ChainMoments")
      .def_readonly("drift", &markov::ChainMoments::drift)
      .def_readonly("second_moment", &markov::ChainMoments::second_moment)
      .def_readonly("covariance", &markov::ChainMoments::covariance);

  py::class_<markov::StabilityReport>(m, "StabilityReport")
      .def_readonly("probabilistic", &markov::StabilityReport::probabilistic)
      .def_readonly("violated_entries",
                    &markov::StabilityReport::violated_entries)
      .def_readonly("cfl_bound", &markov::StabilityReport::cfl_bound)
      .def_readonly("limiter_feasible",
                    &markov::StabilityReport::limiter_feasible);

  py::class_<markov::LocalConsistency>(m, "LocalConsistency")
      .def_readonly("residual", &markov::LocalConsistency::residual)
      .def_readonly("residual_vs_v", &markov::LocalConsistency::residual_vs_v)
      .def_readonly("residual_vs_neg_v",
                    &markov::LocalConsistency::residual_vs_neg_v)
      .def_readonly("chain_velocity",
                    &markov::LocalConsistency::chain_velocity)
      .def_readonly("flux_sum", &markov::LocalConsistency::flux_sum);

  py::class_<markov::GlobalConsistency>(m, "GlobalConsistency")
      .def_readonly("residual", &markov::GlobalConsistency::residual)
      .def_readonly("measured_covariance",
                    &markov::GlobalConsistency::measured_covariance)
      .def_readonly("symbolic_covariance",
                    &markov::GlobalConsistency::symbolic_covariance);

  py::class_<markov::McResult>(m, "McResult")
      .def_readonly("estimate", &markov::McResult::estimate)
      .def_readonly("std_error", &markov::McResult::std_error);

  py::register_exception<markov::StabilityError>(m, "StabilityError");

  m.def("transition_table", &markov::transition_table);
  m.def("chain_moments", &markov::chain_moments, py::arg("table"),
        py::arg("dx"), py::arg("tau"));
  m.def("check_stability", &markov::check_stability, py::arg("weights"),
        py::arg("velocity"), py::arg("limiters"), py::arg("lam"));
  m.def("preset_cfl_bound", &markov::preset_cfl_bound);
  m.def("local_consistency", &markov::local_consistency, py::arg("moments"),
        py::arg("velocity"), py::arg("limiters"), py::arg("tau"),
        py::arg("dx"));
  m.def("global_consistency", &markov::global_consistency, py::arg("moments"),
        py::arg("velocity"), py::arg("limiters"), py::arg("tau"),
        py::arg("dx"));
  m.def("landau_constant", &markov::landau_constant, py::arg("velocity"),
        py::arg("tau"), py::arg("dx"));
  m.def(
      "evolve_deterministic",
      [](const std::vector<double>& d0, const schemes::SchemeConfig& cfg,
         const grid::ConeGrid& g, int steps, bool strict) {
        return markov::evolve_deterministic(d0, cfg, g, steps, strict);
      },
      py::arg("d0"), py::arg("scheme"), py::arg("grid"), py::arg("steps"),
      py::arg("strict") = true);
  m.def(
      "simulate_mc",
      [](int target_layer, int target_index, const std::vector<double>& d0,
         const schemes::SchemeConfig& cfg, const grid::ConeGrid& g,
         std::size_t n_paths, std::uint64_t seed, int threads) {
        return markov::simulate_mc(target_layer, target_index, d0, cfg, g,
                                   n_paths, seed, threads);
      },
      py::arg("target_layer"), py::arg("target_index"), py::arg("d0"),
      py::arg("scheme"), py::arg("grid"), py::arg("n_paths"), py::arg("seed"),
      py::arg("threads") = 1);

  // limiters
  py::enum_<limiters::RootBranch>(m, "RootBranch")
      .value("MINUS_ROOT", limiters::RootBranch::MinusRoot)
      .value("PLUS_ROOT", limiters::RootBranch::PlusRoot);

  py::class_<limiters::LimiterSolution>(m, "LimiterSolution")
      .def_readonly("gamma", &limiters::LimiterSolution::gamma)
      .def_readonly("residual", &limiters::LimiterSolution::residual)
      .def_readonly("branch", &limiters::LimiterSolution::branch);

  m.def("solve_gamma1", &limiters::solve_gamma1, py::arg("v_plus"),
        py::arg("gamma2") = 0.0);
  m.def("solve_gamma4", &limiters::solve_gamma4, py::arg("v_minus"),
        py::arg("gamma3") = 0.0);
  m.def("stability_equality_residual", &limiters::stability_equality_residual);

  // problems
  py::class_<problems::ConservationLaw>(m, "ConservationLaw")
      .def_readonly("name", &problems::ConservationLaw::name)
      .def("flux",
           [](const problems::ConservationLaw& law, double u) {
             return law.flux(u);
           })
      .def("speed", [](const problems::ConservationLaw& law, double u) {
        return law.speed(u);
      });

  py::class_<problems::RiemannProblem>(m, "RiemannProblem")
      .def(py::init([](const problems::ConservationLaw& law, double ul,
                       double ur, double xj) {
             return problems::RiemannProblem{law, ul, ur, xj};
           }),
           py::arg("law"), py::arg("u_left"), py::arg("u_right"),
           py::arg("x_jump") = 0.0)
      .def_readonly("u_left", &problems::RiemannProblem::u_left)
      .def_readonly("u_right", &problems::RiemannProblem::u_right)
      .def_readonly("x_jump", &problems::RiemannProblem::x_jump);

  py::enum_<problems::DiscontinuityType>(m, "DiscontinuityType")
      .value("SHOCK", problems::DiscontinuityType::Shock)
      .value("RAREFACTION", problems::DiscontinuityType::Rarefaction)
      .value("CONTACT", problems::DiscontinuityType::Contact);

  m.def("advection_law", &problems::advection_law);
  m.def("burgers_law", &problems::burgers_law);
  m.def("rankine_hugoniot_speed", &problems::rankine_hugoniot_speed);
  m.def("entropy_admissible", &problems::entropy_admissible);
  m.def("classify_discontinuity", &problems::classify_discontinuity);
  m.def("exact_riemann",
        [](const problems::RiemannProblem& rp, double x, double t) {
          return problems::exact_solution(rp, x, t);
        });
  m.def("l1_error",
        [](const std::vector<double>& numeric, const std::vector<double>& exact,
           double dx) { return problems::l1_error(numeric, exact, dx); });

  // fnn
  py::class_<fnn::SigmoidalNode>(m, "SigmoidalNode")
      .def(py::init([](double alpha, std::vector<double> y, double beta) {
             return fnn::SigmoidalNode{alpha, std::move(y), beta};
           }),
           py::arg("alpha"), py::arg("y"), py::arg("beta"))
      .def_readwrite("alpha", &fnn::SigmoidalNode::alpha)
      .def_readwrite("direction", &fnn::SigmoidalNode::direction)
      .def_readwrite("beta", &fnn::SigmoidalNode::beta);

  py::class_<fnn::SigmoidalNetwork>(m, "SigmoidalNetwork")
      .def(py::init([](double alpha0, std::vector<fnn::SigmoidalNode> nodes) {
             return fnn::SigmoidalNetwork{alpha0, std::move(nodes)};
           }),
           py::arg("alpha0") = 0.0,
           py::arg("nodes") = std::vector<fnn::SigmoidalNode>{})
      .def_readwrite("alpha0", &fnn::SigmoidalNetwork::alpha0)
      .def_readwrite("nodes", &fnn::SigmoidalNetwork::nodes);

  py::class_<fnn::McEstimate>(m, "McEstimate")
      .def_readonly("estimate", &fnn::McEstimate::estimate)
      .def_readonly("std_error", &fnn::McEstimate::std_error);

  m.def("logistic", &fnn::logistic);
  m.def("eval_fnn",
        [](const fnn::SigmoidalNetwork& net, const std::vector<double>& x) {
          return fnn::eval_fnn(net, x);
        });
  m.def(
      "fnn_l1_distance",
      [](const fnn::SigmoidalNetwork& net, const std::function<double(
             std::vector<double>)>& target,
         const std::vector<std::pair<double, double>>& box,
         std::size_t n_samples, std::uint64_t seed) {
        fnn::Box b{box};
        return fnn::l1_distance(
            net,
            [&target](std::span<const double> x) {
              return target(std::vector<double>(x.begin(), x.end()));
            },
            b, n_samples, seed);
      },
      py::arg("net"), py::arg("target"), py::arg("box"), py::arg("n_samples"),
      py::arg("seed"));

  // gds
  py::class_<gds::TwoScaleState>(m, "TwoScaleState")
      .def(py::init([](double h_slow, std::vector<double> mu, double tau_slow,
                       double t_fast) {
             return gds::TwoScaleState{h_slow, std::move(mu), tau_slow,
                                       t_fast};
           }),
           py::arg("h_slow"), py::arg("mu_field"), py::arg("tau_slow") = 0.0,
           py::arg("t_fast") = 0.0)
      .def_readwrite("h_slow", &gds::TwoScaleState::h_slow)
      .def_readwrite("mu_field", &gds::TwoScaleState::mu_field)
      .def_readwrite("tau_slow", &gds::TwoScaleState::tau_slow)
      .def_readwrite("t_fast", &gds::TwoScaleState::t_fast);

  m.def(
      "evolve_two_scale",
      [](const gds::TwoScaleState& init,
         const std::function<double(double, double, double)>& v0,
         const schemes::SchemeConfig& scheme, double fast_tau, double fast_dx,
         double slow_step, int substeps, int n_slow, bool strict) {
        gds::TwoScaleOptions opt;
        opt.scheme = scheme;
        opt.fast_tau = fast_tau;
        opt.fast_dx = fast_dx;
        opt.slow_step = slow_step;
        opt.substeps = substeps;
        opt.n_slow = n_slow;
        opt.strict = strict;
        return gds::evolve_two_scale(init, v0, opt);
      },
      py::arg("init"), py::arg("v0"), py::arg("scheme"), py::arg("fast_tau"),
      py::arg("fast_dx"), py::arg("slow_step"), py::arg("substeps") = 1,
      py::arg("n_slow") = 0, py::arg("strict") = true);
}
