#pragma once

#include <utility>
#include <vector>

namespace chainflux::grid {

// Triangular space-time index set for explicit five-point schemes.
//
// Layer j holds the spatial indices j..2n-j, so the initial layer has
// 2n+1 points and each later layer loses one point at each end until the
// apex layer j = n, which holds the single index n. Every layer sits on
// its own floating time level t_j = t_{j-1} + tau_{j-1}.
class ConeGrid {
 public:
  ConeGrid(int half_width, double dx, std::vector<double> tau_levels,
           double x_left = 0.0, double t_start = 0.0);

  int half_width() const { return n_; }
  int initial_points() const { return 2 * n_ + 1; }
  double dx() const { return h_; }
  double x_left() const { return x0_; }
  double t_start() const { return t0_; }
  const std::vector<double>& tau_levels() const { return tau_; }

  int layer_first(int layer) const;
  int layer_last(int layer) const;
  int layer_size(int layer) const;
  double time_at(int layer) const;

  double x_at(int index) const { return x0_ + h_ * index; }
  double apex_x() const { return x_at(n_); }

 private:
  void require_layer(int layer) const;

  int n_;
  double h_;
  double x0_;
  double t0_;
  std::vector<double> tau_;
  std::vector<double> times_;
};

// Cone with a uniform time increment on every level.
ConeGrid build_cone(int half_width, double dx, double tau, double x_left = 0.0,
                    double t_start = 0.0);

// The (x, t) pairs of one layer, left to right.
std::vector<std::pair<double, double>> layer_points(const ConeGrid& g,
                                                    int layer);

// Uniform wrap-around grid; lets long runs proceed without cone shrinkage.
class PeriodicGrid {
 public:
  PeriodicGrid(int cells, double dx, double x_left = 0.0);

  int cells() const { return m_; }
  double dx() const { return h_; }
  double period() const { return m_ * h_; }
  double x_left() const { return x0_; }

  int wrap(int index) const;
  double x_at(int index) const { return x0_ + h_ * wrap(index); }

 private:
  int m_;
  double h_;
  double x0_;
};

}  // namespace chainflux::grid
