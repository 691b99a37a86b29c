#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "csplace/detail/parallel.hpp"
#include "csplace/error.hpp"
#include "csplace/graph.hpp"
#include "csplace/matrix.hpp"

namespace csplace {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// All-pairs shortest-path lengths; unreachable pairs hold +infinity.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(Matrix<double> d) : d_(std::move(d)) {
    if (d_.rows() != d_.cols()) throw Error(ErrorCode::DimensionMismatch, "distance matrix must be square");
  }

  std::size_t size() const noexcept { return d_.rows(); }
  double operator()(std::size_t m, std::size_t n) const { return d_(m, n); }
  const Matrix<double>& matrix() const noexcept { return d_; }

 private:
  Matrix<double> d_;
};

/// Single-source Dijkstra with a binary heap; writes one row of lengths.
inline void dijkstra(const RoadmapGraph& g, std::size_t source, std::span<double> dist) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& nb : g.neighbors(u)) {
      const double candidate = d + nb.length;
      if (candidate < dist[nb.index]) {
        dist[nb.index] = candidate;
        heap.emplace(candidate, nb.index);
      }
    }
  }
}

/// Runs Dijkstra from every vertex. Sources are independent and may be spread
/// over `threads` workers; each writes only its own row.
inline DistanceMatrix all_pairs_shortest(const RoadmapGraph& g, std::size_t threads = 1) {
  const std::size_t n = g.size();
  Matrix<double> d(n, n, kUnreachable);
  detail::parallel_for(n, threads, [&](std::size_t s) { dijkstra(g, s, d.row(s)); });
  // Symmetrize bitwise: the two directions can differ in the last ulp when
  // equal-length paths are summed in a different order.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::min(d(i, j), d(j, i));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return DistanceMatrix(std::move(d));
}

/**
 * Binary separation matrix: A(m, n) = 0 when the shortest path between m and n
 * is at most R (too close), 1 otherwise. Unreachable pairs are 1. The diagonal
 * is 0 but is not a constraint: a candidate never conflicts with itself.
 */
class ConflictMatrix {
 public:
  ConflictMatrix() = default;
  ConflictMatrix(Matrix<std::uint8_t> a, double separation)
      : a_(std::move(a)), separation_(separation) {
    if (a_.rows() != a_.cols()) throw Error(ErrorCode::DimensionMismatch, "conflict matrix must be square");
  }

  std::size_t size() const noexcept { return a_.rows(); }
  double separation() const noexcept { return separation_; }
  std::uint8_t operator()(std::size_t m, std::size_t n) const { return a_(m, n); }
  const Matrix<std::uint8_t>& matrix() const noexcept { return a_; }

  /// True when m and n may not both be selected (m != n and A = 0).
  bool conflicts(std::size_t m, std::size_t n) const { return m != n && a_(m, n) == 0; }

 private:
  Matrix<std::uint8_t> a_;
  double separation_ = 0.0;
};

inline ConflictMatrix build_conflict_matrix(const DistanceMatrix& d, double separation) {
  if (!(separation >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "separation R must be non-negative");
  }
  const std::size_t n = d.size();
  Matrix<std::uint8_t> a(n, n, 0);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) a(m, k) = d(m, k) <= separation ? 0 : 1;
  }
  return ConflictMatrix(std::move(a), separation);
}

}  // namespace csplace
