#pragma once

#include <cstddef>
#include <string>

#include "csplace/error.hpp"
#include "csplace/frame_links.hpp"
#include "csplace/graph.hpp"

namespace csplace {

/**
 * Read-only view of the full weight matrix over candidates followed by trucks:
 *
 *   | candidate block   0 |
 *   | truck link block  0 |
 *
 * The two zero blocks are implied and never stored. The view borrows both the
 * roadmap and the link block; they must outlive it.
 */
class SplitWeightMatrix {
 public:
  SplitWeightMatrix(const RoadmapGraph& roadmap, const FrameLinkMatrix& links)
      : roadmap_(&roadmap), links_(&links) {}

  std::size_t candidates() const noexcept { return roadmap_->size(); }
  std::size_t trucks() const noexcept { return links_->trucks(); }
  std::size_t size() const noexcept { return candidates() + trucks(); }

  bool is_candidate(std::size_t vertex) const noexcept { return vertex < candidates(); }

  /// Entry (m, n) of the full matrix, 0-based.
  double operator()(std::size_t m, std::size_t n) const {
    const std::size_t nc = candidates();
    if (n >= nc) return 0.0;
    if (m < nc) return roadmap_->weight(m, n);
    return (*links_)(m - nc, n);
  }

  /// Sum of row m excluding the diagonal.
  double row_sum(std::size_t m) const {
    const std::size_t nc = candidates();
    if (m >= nc) return links_->row_sum(m - nc);
    double sum = 0.0;
    for (const auto& nb : roadmap_->neighbors(m)) sum += nb.length;
    return sum;
  }

  const RoadmapGraph& roadmap() const noexcept { return *roadmap_; }
  const FrameLinkMatrix& links() const noexcept { return *links_; }

 private:
  const RoadmapGraph* roadmap_;
  const FrameLinkMatrix* links_;
};

inline SplitWeightMatrix assemble_split_matrix(const RoadmapGraph& roadmap, const FrameLinkMatrix& links) {
  const bool default_empty = links.trucks() == 0 && links.candidates() == 0;
  if (!default_empty && links.candidates() != roadmap.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "link block has " + std::to_string(links.candidates()) + " columns, roadmap has " +
                    std::to_string(roadmap.size()) + " candidates");
  }
  return SplitWeightMatrix(roadmap, links);
}

}  // namespace csplace
