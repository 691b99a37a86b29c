#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csplace/error.hpp"
#include "csplace/matrix.hpp"

namespace csplace {

/// Truck-to-candidate weight block for one frame (trucks are rows, candidates
/// columns), together with the per-truck row totals.
class FrameLinkMatrix {
 public:
  FrameLinkMatrix() = default;

  explicit FrameLinkMatrix(Matrix<double> weights) : weights_(std::move(weights)) {
    row_sums_.assign(weights_.rows(), 0.0);
    for (std::size_t m = 0; m < weights_.rows(); ++m) {
      double sum = 0.0;
      for (const double w : weights_.row(m)) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
          throw Error(ErrorCode::InvalidArgument, "link weight must be finite and non-negative");
        }
        sum += w;
      }
      row_sums_[m] = sum;
    }
  }

  std::size_t trucks() const noexcept { return weights_.rows(); }
  std::size_t candidates() const noexcept { return weights_.cols(); }

  double operator()(std::size_t truck, std::size_t candidate) const {
    return weights_(truck, candidate);
  }
  std::span<const double> row(std::size_t truck) const { return weights_.row(truck); }
  double row_sum(std::size_t truck) const { return row_sums_[truck]; }
  std::span<const double> row_sums() const noexcept { return row_sums_; }
  const Matrix<double>& weights() const noexcept { return weights_; }

  /// Trucks with at least one link.
  std::size_t linked_trucks() const noexcept {
    std::size_t n = 0;
    for (const double s : row_sums_) n += s > 0.0 ? 1 : 0;
    return n;
  }

 private:
  Matrix<double> weights_;
  std::vector<double> row_sums_;
};

}  // namespace csplace
