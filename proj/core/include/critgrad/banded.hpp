#pragma once

#include <span>
#include <vector>

namespace critgrad {

/// Square band matrix with kl sub- and ku super-diagonals, stored row-major.
class BandedMatrix {
 public:
  BandedMatrix(int n, int kl, int ku);

  int n() const { return n_; }
  int kl() const { return kl_; }
  int ku() const { return ku_; }

  bool in_band(int i, int j) const { return j >= i - kl_ && j <= i + ku_; }
  double get(int i, int j) const;
  void set(int i, int j, double v);
  void add(int i, int j, double v);

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> dense() const;  // n*n row-major copy, for small n

 private:
  int n_, kl_, ku_, width_;
  std::vector<double> a_;
  double& ref(int i, int j) { return a_[static_cast<size_t>(i) * width_ + (j - i + kl_)]; }
  double cref(int i, int j) const {
    return a_[static_cast<size_t>(i) * width_ + (j - i + kl_)];
  }
};

/// LU factorization with partial pivoting; fill widens the upper band by kl.
class BandedLU {
 public:
  explicit BandedLU(const BandedMatrix& a);

  bool singular() const { return singular_; }
  /// Smallest |pivot| relative to the matrix scale; small values signal
  /// proximity to a singular matrix (e.g. a fold).
  double min_pivot_ratio() const { return min_pivot_ratio_; }

  void solve_in_place(std::span<double> b) const;  // throws NumericalError if singular
  std::vector<double> solve(std::span<const double> b) const;

 private:
  int n_, kl_, ku_, width_;
  std::vector<double> lu_;
  std::vector<int> piv_;
  bool singular_ = false;
  double min_pivot_ratio_ = 0.0;
  double& ref(int i, int j) { return lu_[static_cast<size_t>(i) * width_ + (j - i + kl_)]; }
  double cref(int i, int j) const {
    return lu_[static_cast<size_t>(i) * width_ + (j - i + kl_)];
  }
};

/// Dense LU with partial pivoting; fallback for bordered systems whose band
/// block is near-singular.
class DenseLU {
 public:
  DenseLU(std::vector<double> a, int n);  // row-major
  bool singular() const { return singular_; }
  void solve_in_place(std::span<double> b) const;
  std::vector<double> solve(std::span<const double> b) const;

 private:
  int n_;
  std::vector<double> a_;
  std::vector<int> piv_;
  bool singular_ = false;
};

}  // namespace critgrad
