#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace critgrad {

/// Axis-aligned box. 1D boxes keep the y components at zero.
struct Box {
  double x_lo = 0.0, x_hi = 0.0;
  double y_lo = 0.0, y_hi = 0.0;
  int dim = 1;

  static Box interval(double a, double b);
  static Box rectangle(double ax, double bx, double ay, double by);

  double width_x() const { return x_hi - x_lo; }
  double width_y() const { return y_hi - y_lo; }
  double diameter() const;
  double measure() const;
  bool contains(double x, double y = 0.0, double tol = 0.0) const;
  bool contains_box(const Box& inner, double tol = 0.0) const;
  std::string str() const;
};

/// Problem domain: an interval (a,b) or a rectangle (ax,bx)x(ay,by).
struct Domain {
  Box box;

  static Domain interval(double a, double b);
  static Domain rectangle(double ax, double bx, double ay, double by);

  int dim() const { return box.dim; }
  double diameter() const { return box.diameter(); }
  // Exact distance to the domain boundary (minimum over faces).
  double boundary_distance(double x, double y = 0.0) const;
};

/// Uniform tensor-product grid with precomputed boundary mask and
/// distance-to-boundary values. Immutable once built; safe to share across
/// concurrent computations.
class Grid {
 public:
  Grid(const Domain& domain, int res_x, int res_y);

  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  // Largest axis spacing; the mesh parameter used in refinement statements.
  double h() const { return hx_ > hy_ ? hx_ : hy_; }
  // Measure of one interior cell, hx (1D) or hx*hy (2D).
  double cell_measure() const { return dim() == 1 ? hx_ : hx_ * hy_; }

  int num_nodes() const { return nx_ * ny_; }
  int num_interior() const { return static_cast<int>(interior_nodes_.size()); }

  double x(int i) const { return domain_.box.x_lo + i * hx_; }
  double y(int j) const { return dim() == 1 ? 0.0 : domain_.box.y_lo + j * hy_; }
  int node(int i, int j) const { return j * nx_ + i; }
  int node_i(int node) const { return node % nx_; }
  int node_j(int node) const { return node / nx_; }
  double node_x(int node) const { return x(node_i(node)); }
  double node_y(int node) const { return y(node_j(node)); }

  bool on_boundary(int node) const { return boundary_[node] != 0; }
  std::span<const std::uint8_t> boundary_mask() const { return boundary_; }

  /// -1 for boundary nodes, otherwise the index into the interior unknowns.
  int interior_index(int node) const { return interior_index_[node]; }
  int interior_node(int k) const { return interior_nodes_[k]; }
  std::span<const int> interior_nodes() const { return interior_nodes_; }

  double delta(int node) const { return delta_[node]; }
  std::span<const double> delta() const { return delta_; }

  /// Trapezoid cell measure of a node (half cells on faces, quarter cells on
  /// 2D corners).
  double quad_weight(int node) const;

  /// Nearest interior node one step inward; used when a negative distance
  /// power must not be evaluated at a boundary node.
  int inward_neighbor(int node) const;

 private:
  Domain domain_;
  int nx_ = 0, ny_ = 1;
  double hx_ = 0.0, hy_ = 0.0;
  std::vector<double> delta_;
  std::vector<std::uint8_t> boundary_;
  std::vector<int> interior_index_;
  std::vector<int> interior_nodes_;
};

/// Builds a uniform grid with `resolution` nodes per axis. Requires
/// resolution >= 3.
Grid build_grid(const Domain& domain, int resolution);
Grid build_grid(const Domain& domain, int res_x, int res_y);

/// Per-node distance to the boundary (copy of the grid's cached field).
std::vector<double> distance_field(const Grid& grid);

struct WeightedIntegral {
  double value = 0.0;
  // Set when delta_exponent <= -1 and the integrand does not vanish near the
  // boundary; the quadrature value is then refinement-dependent.
  bool divergent = false;
};

/// Composite trapezoid quadrature of f * delta^delta_exponent. Nodes with
/// delta = 0 contribute through the adjacent interior integrand value when
/// the exponent is negative.
WeightedIntegral integrate_weighted(std::span<const double> f, double delta_exponent,
                                    const Grid& grid);
double integrate(std::span<const double> f, double delta_exponent, const Grid& grid);

/// Same quadrature restricted to nodes with mask != 0.
WeightedIntegral integrate_weighted_masked(std::span<const double> f, double delta_exponent,
                                           const Grid& grid,
                                           std::span<const std::uint8_t> mask);
double integrate_masked(std::span<const double> f, double delta_exponent, const Grid& grid,
                        std::span<const std::uint8_t> mask);

/// Mask of nodes within Euclidean distance `radius` of (x0, y0).
std::vector<std::uint8_t> ball_mask(const Grid& grid, double x0, double y0, double radius);

}  // namespace critgrad
