#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fgt {

/// Sparse column of an equality-constrained LP, row index + value pairs.
struct SparseCol {
  std::vector<std::pair<int, double>> nz;
};

enum class LpStatus { kOptimal, kUnbounded, kIterLimit };

struct LpResult {
  LpStatus status = LpStatus::kIterLimit;
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x;
  int iterations = 0;
  double feasibility_error = 0.0;  // max |Ax - b| at the returned point
};

/// Revised simplex for  min c^T x  s.t.  A x = b,  x >= 0.
///
/// The caller supplies a feasible starting basis (one column index per row)
/// whose basis matrix is a signed permutation (each column has exactly one
/// nonzero, +-1) so no Phase 1 or initial inversion is needed. The basis
/// inverse is kept dense and updated by pivots; duals are updated
/// incrementally and refreshed from scratch periodically to bound drift.
/// Dantzig pricing with a Bland fallback after a run of degenerate pivots
/// keeps the method from cycling.
class RevisedSimplex {
 public:
  RevisedSimplex(int nrows, std::vector<SparseCol> cols,
                 std::vector<double> cost, std::vector<double> rhs)
      : m_(nrows),
        cols_(std::move(cols)),
        cost_(std::move(cost)),
        rhs_(std::move(rhs)) {
    if (cost_.size() != cols_.size() || static_cast<int>(rhs_.size()) != nrows)
      throw std::invalid_argument("lp: shape mismatch");
  }

  LpResult solve(const std::vector<int>& initial_basis, int max_iter = 0) {
    const int n = static_cast<int>(cols_.size());
    if (static_cast<int>(initial_basis.size()) != m_)
      throw std::invalid_argument("lp: basis size");
    if (max_iter <= 0) max_iter = 50000 + 40 * m_;

    basis_ = initial_basis;
    in_basis_.assign(n, false);
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const int j = basis_[r];
      if (j < 0 || j >= n || cols_[j].nz.size() != 1 ||
          cols_[j].nz[0].first != r ||
          std::abs(std::abs(cols_[j].nz[0].second) - 1.0) > 1e-14)
        throw std::invalid_argument("lp: starting basis must be a signed identity");
      in_basis_[j] = true;
      binv_[static_cast<size_t>(r) * m_ + r] = cols_[j].nz[0].second;
    }
    refresh_xb();
    refresh_y();

    LpResult res;
    int bland_left = 0;
    int degenerate_run = 0;
    for (int iter = 0; iter < max_iter; ++iter) {
      if (iter > 0 && iter % 256 == 0) {
        refresh_xb();
        refresh_y();
      }
      const int j = bland_left > 0 ? price_bland() : price_dantzig();
      if (j < 0) {
        res.status = LpStatus::kOptimal;
        res.iterations = iter;
        return finish(res);
      }
      // FTRAN: direction d = Binv * A_j
      d_.assign(m_, 0.0);
      for (const auto& [row, val] : cols_[j].nz) {
        const double* bc = &binv_[0] + row;
        for (int i = 0; i < m_; ++i) d_[i] += val * bc[static_cast<size_t>(i) * m_];
      }
      // ratio test
      int r = -1;
      double theta = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (d_[i] <= kPivotTol) continue;
        const double t = std::max(xb_[i], 0.0) / d_[i];
        if (r < 0 || t < theta - 1e-12 ||
            (t < theta + 1e-12 &&
             (bland_left > 0 ? basis_[i] < basis_[r] : d_[i] > d_[r]))) {
          r = i;
          theta = t;
        }
      }
      if (r < 0) {
        res.status = LpStatus::kUnbounded;
        res.iterations = iter;
        return finish(res);
      }
      if (theta <= 1e-12) {
        if (++degenerate_run >= 40 && bland_left == 0) bland_left = 1000;
      } else {
        degenerate_run = 0;
        if (bland_left > 0) --bland_left;
      }
      pivot(j, r, theta);
    }
    res.status = LpStatus::kIterLimit;
    res.iterations = max_iter;
    return finish(res);
  }

 private:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kOptTol = 1e-9;

  double reduced_cost(int j) const {
    double rc = cost_[j];
    for (const auto& [row, val] : cols_[j].nz) rc -= y_[row] * val;
    return rc;
  }

  int price_dantzig() const {
    int best = -1;
    double best_rc = -kOptTol;
    for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
      if (in_basis_[j]) continue;
      const double rc = reduced_cost(j);
      if (rc < best_rc) {
        best_rc = rc;
        best = j;
      }
    }
    return best;
  }

  int price_bland() const {
    for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
      if (in_basis_[j]) continue;
      if (reduced_cost(j) < -kOptTol) return j;
    }
    return -1;
  }

  void pivot(int j, int r, double theta) {
    const double rc = reduced_cost(j);
    const double dr = d_[r];
    double* rowr = &binv_[static_cast<size_t>(r) * m_];
    // duals first, using the outgoing row before it is rescaled
    const double ymul = rc / dr;
    for (int k = 0; k < m_; ++k) y_[k] += ymul * rowr[k];
    // eta update of the dense inverse
    const double inv = 1.0 / dr;
    for (int k = 0; k < m_; ++k) rowr[k] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = d_[i];
      if (f == 0.0) continue;
      double* rowi = &binv_[static_cast<size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) rowi[k] -= f * rowr[k];
      xb_[i] -= theta * f;
      if (xb_[i] < 0.0 && xb_[i] > -1e-11) xb_[i] = 0.0;
    }
    xb_[r] = theta;
    in_basis_[basis_[r]] = false;
    in_basis_[j] = true;
    basis_[r] = j;
  }

  void refresh_xb() {
    xb_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double* rowi = &binv_[static_cast<size_t>(i) * m_];
      double s = 0.0;
      for (int k = 0; k < m_; ++k) s += rowi[k] * rhs_[k];
      xb_[i] = s < 0.0 && s > -1e-11 ? 0.0 : s;
    }
  }

  void refresh_y() {
    y_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* rowi = &binv_[static_cast<size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) y_[k] += cb * rowi[k];
    }
  }

  LpResult finish(LpResult res) {
    res.x.assign(cols_.size(), 0.0);
    refresh_xb();
    for (int i = 0; i < m_; ++i) res.x[basis_[i]] = std::max(xb_[i], 0.0);
    double obj = 0.0;
    for (size_t j = 0; j < cols_.size(); ++j) obj += cost_[j] * res.x[j];
    res.objective = obj;
    std::vector<double> ax(m_, 0.0);
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (res.x[j] == 0.0) continue;
      for (const auto& [row, val] : cols_[j].nz) ax[row] += val * res.x[j];
    }
    double err = 0.0;
    for (int i = 0; i < m_; ++i) err = std::max(err, std::abs(ax[i] - rhs_[i]));
    res.feasibility_error = err;
    return res;
  }

  int m_;
  std::vector<SparseCol> cols_;
  std::vector<double> cost_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
  std::vector<bool> in_basis_;
  std::vector<double> binv_;  // row-major m x m
  std::vector<double> xb_, y_, d_;
};

}  // namespace fgt
