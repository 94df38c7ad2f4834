#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace chainflux::fnn {

struct SigmoidalNode {
  double alpha = 0.0;
  std::vector<double> direction;
  double beta = 0.0;
};

// Single hidden layer of sigmoidal nodes plus an output bias.
struct SigmoidalNetwork {
  double alpha0 = 0.0;
  std::vector<SigmoidalNode> nodes;
};

double logistic(double t);

double eval_fnn(const SigmoidalNetwork& net, std::span<const double> x);

// Axis-aligned compact box.
struct Box {
  std::vector<std::pair<double, double>> extents;
  double volume() const;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of the L1 distance between the network and a target
// over the box: volume * mean |target - net| at uniform samples. Samples are
// keyed by (seed, sample index).
McEstimate l1_distance(
    const SigmoidalNetwork& net,
    const std::function<double(std::span<const double>)>& target,
    const Box& box, std::size_t n_samples, std::uint64_t seed);

}  // namespace chainflux::fnn
