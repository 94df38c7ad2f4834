#include "chainflux/grid.hpp"

#include <stdexcept>
#include <string>

namespace chainflux::grid {

ConeGrid::ConeGrid(int half_width, double dx, std::vector<double> tau_levels,
                   double x_left, double t_start)
    : n_(half_width), h_(dx), x0_(x_left), t0_(t_start),
      tau_(std::move(tau_levels)) {
  if (n_ < 1) throw std::invalid_argument("ConeGrid: half_width must be >= 1");
  if (!(h_ > 0.0)) throw std::invalid_argument("ConeGrid: dx must be > 0");
  if (tau_.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("ConeGrid: need one time increment per level");
  times_.resize(n_ + 1);
  times_[0] = t0_;
  for (int j = 0; j < n_; ++j) {
    if (!(tau_[j] > 0.0))
      throw std::invalid_argument("ConeGrid: time increments must be > 0");
    times_[j + 1] = times_[j] + tau_[j];
  }
}

void ConeGrid::require_layer(int layer) const {
  if (layer < 0 || layer > n_)
    throw std::invalid_argument("ConeGrid: layer " + std::to_string(layer) +
                                " outside 0.." + std::to_string(n_));
}

int ConeGrid::layer_first(int layer) const {
  require_layer(layer);
  return layer;
}

int ConeGrid::layer_last(int layer) const {
  require_layer(layer);
  return 2 * n_ - layer;
}

int ConeGrid::layer_size(int layer) const {
  require_layer(layer);
  return 2 * n_ - 2 * layer + 1;
}

double ConeGrid::time_at(int layer) const {
  require_layer(layer);
  return times_[layer];
}

ConeGrid build_cone(int half_width, double dx, double tau, double x_left,
                    double t_start) {
  if (half_width < 1)
    throw std::invalid_argument("build_cone: half_width must be >= 1");
  if (!(dx > 0.0)) throw std::invalid_argument("build_cone: dx must be > 0");
  if (!(tau > 0.0)) throw std::invalid_argument("build_cone: tau must be > 0");
  return ConeGrid(half_width, dx,
                  std::vector<double>(static_cast<std::size_t>(half_width), tau),
                  x_left, t_start);
}

std::vector<std::pair<double, double>> layer_points(const ConeGrid& g,
                                                    int layer) {
  const double t = g.time_at(layer);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(g.layer_size(layer));
  for (int i = g.layer_first(layer); i <= g.layer_last(layer); ++i)
    pts.emplace_back(g.x_at(i), t);
  return pts;
}

PeriodicGrid::PeriodicGrid(int cells, double dx, double x_left)
    : m_(cells), h_(dx), x0_(x_left) {
  if (m_ < 1) throw std::invalid_argument("PeriodicGrid: cells must be >= 1");
  if (!(h_ > 0.0)) throw std::invalid_argument("PeriodicGrid: dx must be > 0");
}

int PeriodicGrid::wrap(int index) const {
  int r = index % m_;
  return r < 0 ? r + m_ : r;
}

}  // namespace chainflux::grid
