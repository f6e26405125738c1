#include "critgrad/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace critgrad {

Box Box::interval(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("Box::interval: requires b > a");
  Box box;
  box.x_lo = a;
  box.x_hi = b;
  box.dim = 1;
  return box;
}

Box Box::rectangle(double ax, double bx, double ay, double by) {
  if (!(bx > ax) || !(by > ay))
    throw std::invalid_argument("Box::rectangle: requires bx > ax and by > ay");
  Box box;
  box.x_lo = ax;
  box.x_hi = bx;
  box.y_lo = ay;
  box.y_hi = by;
  box.dim = 2;
  return box;
}

double Box::diameter() const {
  if (dim == 1) return width_x();
  return std::hypot(width_x(), width_y());
}

double Box::measure() const {
  if (dim == 1) return width_x();
  return width_x() * width_y();
}

bool Box::contains(double x, double y, double tol) const {
  bool in_x = x >= x_lo - tol && x <= x_hi + tol;
  if (dim == 1) return in_x;
  return in_x && y >= y_lo - tol && y <= y_hi + tol;
}

bool Box::contains_box(const Box& inner, double tol) const {
  bool in_x = inner.x_lo >= x_lo - tol && inner.x_hi <= x_hi + tol;
  if (dim == 1) return in_x;
  return in_x && inner.y_lo >= y_lo - tol && inner.y_hi <= y_hi + tol;
}

std::string Box::str() const {
  std::ostringstream os;
  os.precision(17);
  if (dim == 1) {
    os << "(" << x_lo << "," << x_hi << ")";
  } else {
    os << "(" << x_lo << "," << x_hi << ")x(" << y_lo << "," << y_hi << ")";
  }
  return os.str();
}

Domain Domain::interval(double a, double b) { return Domain{Box::interval(a, b)}; }

Domain Domain::rectangle(double ax, double bx, double ay, double by) {
  return Domain{Box::rectangle(ax, bx, ay, by)};
}

double Domain::boundary_distance(double x, double y) const {
  double d = std::min(x - box.x_lo, box.x_hi - x);
  if (dim() == 2) d = std::min({d, y - box.y_lo, box.y_hi - y});
  return d;
}

Grid::Grid(const Domain& domain, int res_x, int res_y) : domain_(domain) {
  if (res_x < 3 || (domain.dim() == 2 && res_y < 3))
    throw std::invalid_argument("build_grid: resolution must be >= 3 nodes per axis");
  nx_ = res_x;
  ny_ = domain.dim() == 1 ? 1 : res_y;
  hx_ = domain.box.width_x() / (nx_ - 1);
  hy_ = domain.dim() == 1 ? 0.0 : domain.box.width_y() / (ny_ - 1);

  const int n = num_nodes();
  delta_.resize(n);
  boundary_.resize(n);
  interior_index_.assign(n, -1);
  interior_nodes_.reserve(n);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const int id = node(i, j);
      bool bnd = i == 0 || i == nx_ - 1;
      if (dim() == 2) bnd = bnd || j == 0 || j == ny_ - 1;
      boundary_[id] = bnd ? 1 : 0;
      // Boundary nodes carry exactly zero; interior values come from the
      // face formula so they agree with Domain::boundary_distance.
      delta_[id] = bnd ? 0.0 : domain_.boundary_distance(x(i), y(j));
      if (!bnd) {
        interior_index_[id] = static_cast<int>(interior_nodes_.size());
        interior_nodes_.push_back(id);
      }
    }
  }
}

double Grid::quad_weight(int node) const {
  const int i = node_i(node);
  const int j = node_j(node);
  double w = (i == 0 || i == nx_ - 1) ? hx_ / 2.0 : hx_;
  if (dim() == 2) w *= (j == 0 || j == ny_ - 1) ? hy_ / 2.0 : hy_;
  return w;
}

int Grid::inward_neighbor(int node) const {
  int i = std::clamp(node_i(node), 1, nx_ - 2);
  int j = dim() == 2 ? std::clamp(node_j(node), 1, ny_ - 2) : 0;
  return this->node(i, j);
}

Grid build_grid(const Domain& domain, int resolution) {
  return Grid(domain, resolution, resolution);
}

Grid build_grid(const Domain& domain, int res_x, int res_y) {
  return Grid(domain, res_x, res_y);
}

std::vector<double> distance_field(const Grid& grid) {
  return std::vector<double>(grid.delta().begin(), grid.delta().end());
}

namespace {

WeightedIntegral integrate_impl(std::span<const double> f, double gamma, const Grid& grid,
                                std::span<const std::uint8_t> mask) {
  if (f.size() != static_cast<size_t>(grid.num_nodes()))
    throw std::invalid_argument("integrate: field size does not match grid");
  WeightedIntegral out;
  double sum = 0.0;
  const int n = grid.num_nodes();
  for (int id = 0; id < n; ++id) {
    if (!mask.empty() && mask[id] == 0) continue;
    const double w = grid.quad_weight(id);
    double d = grid.delta(id);
    double fv = f[id];
    if (d == 0.0) {
      if (gamma > 0.0) continue;       // weight vanishes
      if (gamma == 0.0) {
        sum += w * fv;                 // delta^0 == 1 everywhere
        continue;
      }
      // Negative power at the boundary: the cell contributes through the
      // adjacent interior integrand value.
      const int in = grid.inward_neighbor(id);
      d = grid.delta(in);
      fv = f[in];
    }
    sum += w * fv * std::pow(d, gamma);
  }
  out.value = sum;
  if (gamma <= -1.0) {
    // The integral of delta^gamma near the boundary diverges; flag it when
    // the integrand is active there.
    for (int id = 0; id < n && !out.divergent; ++id) {
      if (!mask.empty() && mask[id] == 0) continue;
      if (grid.on_boundary(id)) continue;
      const double near = 1.5 * (grid.dim() == 1 ? grid.hx() : std::max(grid.hx(), grid.hy()));
      if (grid.delta(id) <= near && std::abs(f[id]) > 1e-14) out.divergent = true;
    }
  }
  return out;
}

}  // namespace

WeightedIntegral integrate_weighted(std::span<const double> f, double delta_exponent,
                                    const Grid& grid) {
  return integrate_impl(f, delta_exponent, grid, {});
}

double integrate(std::span<const double> f, double delta_exponent, const Grid& grid) {
  return integrate_impl(f, delta_exponent, grid, {}).value;
}

WeightedIntegral integrate_weighted_masked(std::span<const double> f, double delta_exponent,
                                           const Grid& grid,
                                           std::span<const std::uint8_t> mask) {
  if (mask.size() != static_cast<size_t>(grid.num_nodes()))
    throw std::invalid_argument("integrate_masked: mask size does not match grid");
  return integrate_impl(f, delta_exponent, grid, mask);
}

double integrate_masked(std::span<const double> f, double delta_exponent, const Grid& grid,
                        std::span<const std::uint8_t> mask) {
  return integrate_weighted_masked(f, delta_exponent, grid, mask).value;
}

std::vector<std::uint8_t> ball_mask(const Grid& grid, double x0, double y0, double radius) {
  std::vector<std::uint8_t> mask(grid.num_nodes(), 0);
  const double r2 = radius * radius;
  for (int id = 0; id < grid.num_nodes(); ++id) {
    const double dx = grid.node_x(id) - x0;
    const double dy = grid.dim() == 2 ? grid.node_y(id) - y0 : 0.0;
    if (dx * dx + dy * dy <= r2) mask[id] = 1;
  }
  return mask;
}

}  // namespace critgrad
