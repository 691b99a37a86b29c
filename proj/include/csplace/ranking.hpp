#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csplace/error.hpp"
#include "csplace/frame_links.hpp"
#include "csplace/matrix.hpp"
#include "csplace/split_matrix.hpp"

namespace csplace {

enum class RatingKind { PerFrame, Accumulated };

/// Non-negative rating per candidate, in candidate index order.
struct RatingVector {
  std::vector<double> values;
  RatingKind kind = RatingKind::PerFrame;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
};

/**
 * Rates candidates for one frame. Every truck with at least one link carries
 * unit importance and spreads it over its candidates in proportion to the link
 * weights: p_k = sum over trucks m of w_mk / sum_n w_mn. Unlinked trucks are
 * skipped.
 */
inline RatingVector rate_frame(const FrameLinkMatrix& links) {
  RatingVector p{std::vector<double>(links.candidates(), 0.0), RatingKind::PerFrame};
  for (std::size_t m = 0; m < links.trucks(); ++m) {
    const double total = links.row_sum(m);
    if (!(total > 0.0)) continue;
    const auto row = links.row(m);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] != 0.0) p.values[k] += row[k] / total;
    }
  }
  return p;
}

/// Element-wise sum of per-frame ratings as a left fold in the given
/// (ascending timestamp) order, so the result does not depend on how the
/// frames were produced.
inline RatingVector accumulate(std::span<const RatingVector> frames, std::size_t candidates) {
  RatingVector total{std::vector<double>(candidates, 0.0), RatingKind::Accumulated};
  for (const auto& frame : frames) {
    if (frame.size() != candidates) {
      throw Error(ErrorCode::DimensionMismatch, "rating vector of length " + std::to_string(frame.size()) +
                                                    ", expected " + std::to_string(candidates));
    }
    for (std::size_t k = 0; k < candidates; ++k) total.values[k] += frame.values[k];
  }
  return total;
}

inline RatingVector accumulate(std::span<const RatingVector> frames) {
  return accumulate(frames, frames.empty() ? 0 : frames.front().size());
}

// ---------------------------------------------------------------------------
// General PageRank at toy scale. Not used by the pipeline; it is the
// independent route that the reduced per-frame scheme is checked against.

/// Column-stochastic transition matrix M(k, m) = w_mk / sum_{n != m} w_mn.
/// Columns of vertices without outgoing links are zero.
class GoogleMatrix {
 public:
  GoogleMatrix() = default;
  explicit GoogleMatrix(Matrix<double> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw Error(ErrorCode::DimensionMismatch, "Google matrix must be square");
  }

  std::size_t size() const noexcept { return m_.rows(); }
  double operator()(std::size_t k, std::size_t m) const { return m_(k, m); }
  const Matrix<double>& matrix() const noexcept { return m_; }

 private:
  Matrix<double> m_;
};

inline constexpr std::size_t kMaxGoogleMatrixSize = 10000;

/// Dense construction from an arbitrary square weight matrix (diagonal ignored).
inline GoogleMatrix build_google_matrix(const Matrix<double>& weights) {
  const std::size_t n = weights.rows();
  if (weights.cols() != n) throw Error(ErrorCode::DimensionMismatch, "weight matrix must be square");
  if (n > kMaxGoogleMatrixSize) throw Error(ErrorCode::InstanceTooLarge, "Google matrix limited to 10000 vertices");
  Matrix<double> g(n, n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double out = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != m) out += weights(m, j);
    }
    if (out == 0.0) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != m) g(k, m) = weights(m, k) / out;
    }
  }
  return GoogleMatrix(std::move(g));
}

/// Same construction over the implied full matrix of a split view.
inline GoogleMatrix build_google_matrix(const SplitWeightMatrix& split) {
  const std::size_t n = split.size();
  if (n > kMaxGoogleMatrixSize) throw Error(ErrorCode::InstanceTooLarge, "Google matrix limited to 10000 vertices");
  Matrix<double> dense(n, n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) dense(m, k) = split(m, k);
  }
  return build_google_matrix(dense);
}

/// One application of the importance recurrence with every truck vertex
/// (index >= candidates) fixed at importance 1, keeping only truck-to-candidate
/// contributions. Returns the candidate components.
inline RatingVector one_step_importance(const GoogleMatrix& google, std::size_t candidates) {
  if (candidates > google.size()) throw Error(ErrorCode::DimensionMismatch, "more candidates than vertices");
  RatingVector p{std::vector<double>(candidates, 0.0), RatingKind::PerFrame};
  for (std::size_t k = 0; k < candidates; ++k) {
    double sum = 0.0;
    for (std::size_t m = candidates; m < google.size(); ++m) sum += google(k, m) * 1.0;
    p.values[k] = sum;
  }
  return p;
}

struct PowerIterationResult {
  std::vector<double> values;
  std::size_t iterations = 0;
  /// False when the iteration budget ran out (NoConvergence); `values` then
  /// holds the last iterate.
  bool converged = false;
};

/**
 * Undamped power iteration p <- M p from `start` (uniform when empty), stopping
 * once the max-norm change drops below `tol`. The result is normalized to unit
 * 1-norm when it is nonzero. Without damping, periodic chains may never settle.
 */
inline PowerIterationResult power_iteration(const GoogleMatrix& google, std::size_t max_iters, double tol,
                                            std::vector<double> start = {}) {
  const std::size_t n = google.size();
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "power iteration needs at least one step");
  if (start.empty()) start.assign(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  if (start.size() != n) throw Error(ErrorCode::DimensionMismatch, "start vector length");

  PowerIterationResult result;
  std::vector<double> p = std::move(start);
  std::vector<double> next(n);
  for (std::size_t it = 1; it <= max_iters; ++it) {
    double change = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double sum = 0.0;
      for (std::size_t m = 0; m < n; ++m) sum += google(k, m) * p[m];
      next[k] = sum;
      change = std::max(change, std::abs(sum - p[k]));
    }
    std::swap(p, next);
    result.iterations = it;
    if (change < tol) {
      result.converged = true;
      break;
    }
  }
  double norm = 0.0;
  for (const double v : p) norm += std::abs(v);
  if (norm > 0.0) {
    for (double& v : p) v /= norm;
  }
  result.values = std::move(p);
  return result;
}

}  // namespace csplace
