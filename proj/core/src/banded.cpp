#include "critgrad/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "critgrad/errors.hpp"

namespace critgrad {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), width_(kl + ku + 1) {
  if (n <= 0 || kl < 0 || ku < 0) throw std::invalid_argument("BandedMatrix: bad shape");
  a_.assign(static_cast<size_t>(n) * width_, 0.0);
}

double BandedMatrix::get(int i, int j) const { return in_band(i, j) ? cref(i, j) : 0.0; }

void BandedMatrix::set(int i, int j, double v) {
  if (!in_band(i, j)) throw std::invalid_argument("BandedMatrix::set: outside band");
  ref(i, j) = v;
}

void BandedMatrix::add(int i, int j, double v) {
  if (!in_band(i, j)) throw std::invalid_argument("BandedMatrix::add: outside band");
  ref(i, j) += v;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  if (x.size() != static_cast<size_t>(n_))
    throw std::invalid_argument("BandedMatrix::multiply: size mismatch");
  std::vector<double> y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    const int j0 = std::max(0, i - kl_);
    const int j1 = std::min(n_ - 1, i + ku_);
    double s = 0.0;
    for (int j = j0; j <= j1; ++j) s += cref(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> BandedMatrix::dense() const {
  std::vector<double> d(static_cast<size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    const int j0 = std::max(0, i - kl_);
    const int j1 = std::min(n_ - 1, i + ku_);
    for (int j = j0; j <= j1; ++j) d[static_cast<size_t>(i) * n_ + j] = cref(i, j);
  }
  return d;
}

BandedLU::BandedLU(const BandedMatrix& a)
    : n_(a.n()), kl_(a.kl()), ku_(a.ku() + a.kl()), width_(a.kl() + ku_ + 1) {
  lu_.assign(static_cast<size_t>(n_) * width_, 0.0);
  piv_.resize(n_);
  double scale = 0.0;
  for (int i = 0; i < n_; ++i) {
    const int j0 = std::max(0, i - a.kl());
    const int j1 = std::min(n_ - 1, i + a.ku());
    for (int j = j0; j <= j1; ++j) {
      ref(i, j) = a.get(i, j);
      scale = std::max(scale, std::abs(a.get(i, j)));
    }
  }
  if (scale == 0.0) {
    singular_ = true;
    return;
  }
  min_pivot_ratio_ = 1.0;
  for (int k = 0; k < n_; ++k) {
    // Partial pivoting among the kl rows below the diagonal.
    int p = k;
    double best = std::abs(cref(k, k));
    const int last_row = std::min(n_ - 1, k + kl_);
    for (int i = k + 1; i <= last_row; ++i) {
      const double v = std::abs(cref(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv_[k] = p;
    const int jmax = std::min(n_ - 1, k + ku_);
    if (p != k) {
      for (int j = k; j <= jmax; ++j) std::swap(ref(k, j), ref(p, j));
    }
    const double pivot = cref(k, k);
    min_pivot_ratio_ = std::min(min_pivot_ratio_, std::abs(pivot) / scale);
    if (pivot == 0.0) {
      singular_ = true;
      return;
    }
    for (int i = k + 1; i <= last_row; ++i) {
      const double m = cref(i, k) / pivot;
      ref(i, k) = m;
      for (int j = k + 1; j <= jmax; ++j) ref(i, j) -= m * cref(k, j);
    }
  }
}

void BandedLU::solve_in_place(std::span<double> b) const {
  if (singular_) throw NumericalError("banded solve: singular matrix");
  if (b.size() != static_cast<size_t>(n_))
    throw std::invalid_argument("BandedLU::solve: size mismatch");
  for (int k = 0; k < n_; ++k) {
    if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    const int last_row = std::min(n_ - 1, k + kl_);
    for (int i = k + 1; i <= last_row; ++i) b[i] -= cref(i, k) * b[k];
  }
  for (int k = n_ - 1; k >= 0; --k) {
    const int jmax = std::min(n_ - 1, k + ku_);
    double s = b[k];
    for (int j = k + 1; j <= jmax; ++j) s -= cref(k, j) * b[j];
    b[k] = s / cref(k, k);
  }
}

std::vector<double> BandedLU::solve(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

DenseLU::DenseLU(std::vector<double> a, int n) : n_(n), a_(std::move(a)) {
  if (a_.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("DenseLU: size mismatch");
  piv_.resize(n_);
  for (int k = 0; k < n_; ++k) {
    int p = k;
    double best = std::abs(a_[static_cast<size_t>(k) * n_ + k]);
    for (int i = k + 1; i < n_; ++i) {
      const double v = std::abs(a_[static_cast<size_t>(i) * n_ + k]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv_[k] = p;
    if (p != k) {
      for (int j = 0; j < n_; ++j)
        std::swap(a_[static_cast<size_t>(k) * n_ + j], a_[static_cast<size_t>(p) * n_ + j]);
    }
    const double pivot = a_[static_cast<size_t>(k) * n_ + k];
    if (pivot == 0.0) {
      singular_ = true;
      return;
    }
    for (int i = k + 1; i < n_; ++i) {
      const double m = a_[static_cast<size_t>(i) * n_ + k] / pivot;
      a_[static_cast<size_t>(i) * n_ + k] = m;
      for (int j = k + 1; j < n_; ++j)
        a_[static_cast<size_t>(i) * n_ + j] -= m * a_[static_cast<size_t>(k) * n_ + j];
    }
  }
}

void DenseLU::solve_in_place(std::span<double> b) const {
  if (singular_) throw NumericalError("dense solve: singular matrix");
  if (b.size() != static_cast<size_t>(n_))
    throw std::invalid_argument("DenseLU::solve: size mismatch");
  for (int k = 0; k < n_; ++k) {
    if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    for (int i = k + 1; i < n_; ++i) b[i] -= a_[static_cast<size_t>(i) * n_ + k] * b[k];
  }
  for (int k = n_ - 1; k >= 0; --k) {
    double s = b[k];
    for (int j = k + 1; j < n_; ++j) s -= a_[static_cast<size_t>(k) * n_ + j] * b[j];
    b[k] = s / a_[static_cast<size_t>(k) * n_ + k];
  }
}

std::vector<double> DenseLU::solve(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

}  // namespace critgrad
