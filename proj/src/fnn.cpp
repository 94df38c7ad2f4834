#include "chainflux/fnn.hpp"

#include <cmath>
#include <stdexcept>

#include "chainflux/rng.hpp"

namespace chainflux::fnn {

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double eval_fnn(const SigmoidalNetwork& net, std::span<const double> x) {
  double out = net.alpha0;
  for (const SigmoidalNode& node : net.nodes) {
    if (node.direction.size() != x.size())
      throw std::invalid_argument("eval_fnn: input dimension mismatch");
    double t = node.beta;
    for (std::size_t d = 0; d < x.size(); ++d) t += node.direction[d] * x[d];
    out += node.alpha * logistic(t);
  }
  return out;
}

double Box::volume() const {
  double v = 1.0;
  for (const auto& [lo, hi] : extents) v *= hi - lo;
  return v;
}

McEstimate l1_distance(
    const SigmoidalNetwork& net,
    const std::function<double(std::span<const double>)>& target,
    const Box& box, std::size_t n_samples, std::uint64_t seed) {
  if (box.extents.empty())
    throw std::invalid_argument("l1_distance: box must have extent");
  for (const auto& [lo, hi] : box.extents)
    if (!(hi > lo))
      throw std::invalid_argument("l1_distance: box extents must be nonempty");
  if (n_samples < 2)
    throw std::invalid_argument("l1_distance: need at least 2 samples");

  const std::size_t dim = box.extents.size();
  std::vector<double> x(dim);
  std::vector<double> gaps(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    CounterRng rng(seed, s);
    for (std::size_t d = 0; d < dim; ++d) {
      const auto& [lo, hi] = box.extents[d];
      x[d] = lo + (hi - lo) * rng.next_unit();
    }
    gaps[s] = std::abs(target(x) - eval_fnn(net, x));
  }

  double sum = 0.0, c = 0.0;
  for (double g : gaps) {
    const double y = g - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  const double mean = sum / static_cast<double>(n_samples);

  double sq = 0.0;
  for (double g : gaps) sq += (g - mean) * (g - mean);
  const double var = sq / static_cast<double>(n_samples - 1);

  McEstimate e;
  e.estimate = box.volume() * mean;
  e.std_error =
      box.volume() * std::sqrt(var / static_cast<double>(n_samples));
  return e;
}

}  // namespace chainflux::fnn
