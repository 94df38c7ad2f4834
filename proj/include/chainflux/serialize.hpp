#pragma once

#include <json.hpp>

#include "chainflux/markov.hpp"

namespace chainflux::serialize {

// The single JSON object a stability check emits: sign verdict, CFL bound,
// chain moments and both consistency residuals. Unbounded CFL serializes
// as null.
nlohmann::json stability_report(const markov::StabilityReport& report,
                                const markov::ChainMoments& moments,
                                const markov::LocalConsistency& local,
                                const markov::GlobalConsistency& global,
                                double lambda);

// Fixed 17-significant-digit decimal form used by every CSV emitter, so
// identical runs produce identical bytes.
std::string csv_double(double v);

}  // namespace chainflux::serialize
