#pragma once

#include <span>
#include <vector>

#include "critgrad/banded.hpp"
#include "critgrad/geometry.hpp"

namespace critgrad {

/// Nodal gradient components; gy stays empty on 1D grids.
struct GradientField {
  std::vector<double> gx;
  std::vector<double> gy;
};

/// Central differences at interior nodes, second-order one-sided differences
/// on the boundary.
GradientField gradient_field(std::span<const double> u, const Grid& grid);

/// |grad u|^2 per node, from gradient_field.
std::vector<double> gradient_squared(std::span<const double> u, const Grid& grid);

/// -Laplacian via the 3-point (1D) / 5-point (2D) stencil; zero at boundary
/// nodes.
std::vector<double> neg_laplacian(std::span<const double> u, const Grid& grid);

/// -Laplacian as a band matrix over the interior unknowns (homogeneous
/// Dirichlet data).
BandedMatrix neg_laplacian_matrix(const Grid& grid);

/// Grid-weighted l2 inner product and norm over full-size nodal fields,
/// consistent with the trapezoid quadrature at weight zero.
double l2_inner(std::span<const double> a, std::span<const double> b, const Grid& grid);
double l2_norm(std::span<const double> a, const Grid& grid);

double sup_norm(std::span<const double> a);

}  // namespace critgrad
