#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace tfgp {

enum class Spacing { uniform, graded };

/// Ordered 1-D node set with composite quadrature weights.
///
/// Weights are composite Simpson (with a 3/8 panel when the interval count is
/// odd) for uniform grids and the pairwise non-uniform Simpson rule for graded
/// grids, so that `sum(weights) == back() - front()` up to rounding.
class Grid {
 public:
  static Grid uniform(double lo, double hi, std::size_t n_nodes);
  /// Uniform grid of spacing 1/nodes_per_unit covering [lo, hi]; both ends
  /// must be integer multiples of the spacing.
  static Grid uniform_per_unit(double lo, double hi, int nodes_per_unit);
  static Grid graded(std::vector<double> nodes);

  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  double length() const { return back() - front(); }
  /// Spacing for uniform grids; mean spacing otherwise.
  double step() const { return length() / static_cast<double>(size() - 1); }

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  Spacing spacing() const { return spacing_; }

  /// Index i with nodes[i] <= x < nodes[i+1], clamped to [0, size()-2].
  std::size_t bracket(double x) const;
  /// Index of the node equal to x within `rel_tol * length()`; throws
  /// std::invalid_argument when x is not a node.
  std::size_t node_index(double x, double rel_tol = 1e-12) const;
  bool contains(double x) const { return x >= front() && x <= back(); }

 private:
  Grid(std::vector<double> nodes, Spacing spacing);

  std::vector<double> nodes_;
  std::vector<double> weights_;
  Spacing spacing_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Samples of a function on a grid.
///
/// When first and second derivative samples are attached, evaluation between
/// nodes uses quintic Hermite interpolation (order 6); otherwise a four-point
/// Lagrange stencil (order 4).
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(GridPtr grid, std::vector<double> values);
  ScalarField(GridPtr grid, std::vector<double> values, std::vector<double> d1,
              std::vector<double> d2);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> first_derivative() const { return d1_; }
  std::span<const double> second_derivative() const { return d2_; }
  bool has_derivatives() const { return !d1_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// Declared interpolation order.
  int interpolation_order() const { return has_derivatives() ? 6 : 4; }

  /// Interpolated value; throws std::out_of_range outside the grid.
  double operator()(double x) const;
  /// Interpolated first derivative (requires derivative samples).
  double derivative(double x) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  std::vector<double> d1_;
  std::vector<double> d2_;
};

}  // namespace tfgp
