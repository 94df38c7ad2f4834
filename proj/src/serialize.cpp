#include "chainflux/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace chainflux::serialize {

nlohmann::json stability_report(const markov::StabilityReport& report,
                                const markov::ChainMoments& moments,
                                const markov::LocalConsistency& local,
                                const markov::GlobalConsistency& global,
                                double lambda) {
  nlohmann::json violated = nlohmann::json::array();
  for (const auto& [offset, value] : report.violated_entries)
    violated.push_back({offset, value});
  nlohmann::json out{
      {"probabilistic", report.probabilistic},
      {"violated_entries", violated},
      {"drift", moments.drift},
      {"second_moment", moments.second_moment},
      {"v_mc", local.chain_velocity},
      {"local_residual", local.residual},
      {"global_residual", global.residual},
      {"flux_sum", local.flux_sum},
      {"limiter_feasible", report.limiter_feasible},
      {"lambda", lambda},
  };
  if (std::isinf(report.cfl_bound))
    out["cfl_bound"] = nullptr;
  else
    out["cfl_bound"] = report.cfl_bound;
  return out;
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace chainflux::serialize
