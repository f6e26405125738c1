#pragma once

#include <span>
#include <string>
#include <vector>

#include "critgrad/fields.hpp"
#include "critgrad/geometry.hpp"

namespace critgrad {

/// Eigenvalue with its L2-normalized, interior-positive eigenfunction on the
/// full grid (zeros outside the active region).
struct EigenPair {
  double value = 0.0;
  std::vector<double> vec;
  double residual_inf = 0.0;
  int iterations = 0;
};

/// Smallest eigenvalue gamma of -Lap_h phi = gamma c phi via inverse power
/// iteration; c >= 0 and nontrivial. No nontrivial nonnegative solution of
/// the full problem exists above this threshold.
EigenPair gamma1(const CoefficientField& c, const Grid& grid);

/// First Dirichlet eigenpair of -Lap_h on a node-aligned sub-box; the
/// eigenfunction is extended by zero to the full grid.
EigenPair dirichlet_eigpair(const Box& subbox, const Grid& grid);

struct SolvabilityReport {
  double mu0 = 0.0;
  double nu1 = 0.0;     // smallest eigenvalue of -Lap_h phi = nu h phi
  double margin = 0.0;  // nu1 - mu0
  bool solvable = false;
  std::string sobolev_criterion;  // the n >= 3 smallness route; recorded only
};

/// Sufficient condition for solvability at lambda = 0 with constant mu:
/// mu0 < nu1.
SolvabilityReport check_p0_solvability(double mu0, const CoefficientField& h,
                                       const Grid& grid);

struct ComparabilityBounds {
  double c_lower = 0.0;  // min over interior of phi/delta
  double c_upper = 0.0;  // max over interior of phi/delta
};

/// Two-sided comparison of a positive interior field against the boundary
/// distance.
ComparabilityBounds eigen_distance_comparability(std::span<const double> phi,
                                                 const Grid& grid);

/// Discrete Rayleigh quotient (phi' A phi)/(phi' C phi) with A = -Lap_h over
/// the interior unknowns; an upper bound for gamma1 for any nonzero trial.
double rayleigh_quotient(std::span<const double> phi, const CoefficientField& c,
                         const Grid& grid);

struct Extrapolation {
  double value = 0.0;
  double order = 0.0;  // observed convergence order
};

/// Empirical-order Richardson extrapolation of a sequence computed on grids
/// refined by the factor 2 (coarse first). Uses the last three entries.
Extrapolation richardson_extrapolate(std::span<const double> values);

}  // namespace critgrad
