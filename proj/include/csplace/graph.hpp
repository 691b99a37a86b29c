#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "csplace/detail/text.hpp"
#include "csplace/error.hpp"

namespace csplace {

/// External identifier of a vertex, unique within its class (candidate or truck).
struct VertexId {
  std::uint64_t value = 0;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// Planar point in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline double euclidean(const Point& a, const Point& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Vertex {
  VertexId id;
  Point position;
};

struct Edge {
  VertexId from;
  VertexId to;
  double length = 0.0;
};

struct Neighbor {
  std::size_t index;
  double length;
};

/**
 * Undirected, distance-weighted roadmap of charging-station candidates.
 *
 * Vertices are stored sorted by id, so the internal index order (used by every
 * matrix and vector in the library) is ascending id order. The graph is
 * immutable after construction.
 */
class RoadmapGraph {
 public:
  RoadmapGraph() = default;

  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Vertex& vertex(std::size_t index) const { return vertices_[index]; }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  VertexId id(std::size_t index) const { return vertices_[index].id; }
  const Point& position(std::size_t index) const { return vertices_[index].position; }

  std::optional<std::size_t> index_of(VertexId id) const {
    const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                                     [](const Vertex& v, VertexId key) { return v.id < key; });
    if (it == vertices_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::span<const Neighbor> neighbors(std::size_t index) const { return adjacency_[index]; }
  std::size_t degree(std::size_t index) const { return adjacency_[index].size(); }

  /// Entry of the candidate weight block: edge length, or 0 without an edge.
  double weight(std::size_t i, std::size_t k) const {
    for (const auto& n : adjacency_[i]) {
      if (n.index == k) return n.length;
    }
    return 0.0;
  }

  /// Edges as index pairs with first < second, in ascending order.
  std::span<const std::pair<std::size_t, std::size_t>> edge_pairs() const noexcept { return edges_; }

 private:
  friend RoadmapGraph build_roadmap(std::vector<Vertex>, std::span<const Edge>);

  std::vector<Vertex> vertices_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Validates and builds a roadmap. Each undirected edge is listed once; a
/// repeated pair (in either orientation) is rejected as DuplicateEdge.
inline RoadmapGraph build_roadmap(std::vector<Vertex> vertices, std::span<const Edge> edges) {
  RoadmapGraph g;
  std::sort(vertices.begin(), vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i].id == vertices[i - 1].id) {
      throw Error(ErrorCode::DuplicateVertex,
                  "vertex id " + std::to_string(vertices[i].id.value) + " appears more than once");
    }
  }
  for (const auto& v : vertices) {
    if (!std::isfinite(v.position.x) || !std::isfinite(v.position.y)) {
      throw Error(ErrorCode::InvalidArgument,
                  "vertex " + std::to_string(v.id.value) + " has non-finite coordinates");
    }
  }
  g.vertices_ = std::move(vertices);
  g.adjacency_.resize(g.vertices_.size());

  for (const auto& e : edges) {
    const auto a = g.index_of(e.from);
    const auto b = g.index_of(e.to);
    if (!a || !b) {
      throw Error(ErrorCode::DanglingEdge, "edge (" + std::to_string(e.from.value) + ", " +
                                               std::to_string(e.to.value) +
                                               ") references an unknown vertex");
    }
    if (*a == *b) {
      throw Error(ErrorCode::SelfLoop, "edge at vertex " + std::to_string(e.from.value));
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw Error(ErrorCode::NonPositiveLength, "edge (" + std::to_string(e.from.value) + ", " +
                                                    std::to_string(e.to.value) +
                                                    ") has length " + detail::format_double(e.length));
    }
    for (const auto& n : g.adjacency_[*a]) {
      if (n.index == *b) {
        throw Error(ErrorCode::DuplicateEdge, "edge (" + std::to_string(e.from.value) + ", " +
                                                  std::to_string(e.to.value) + ") listed twice");
      }
    }
    g.adjacency_[*a].push_back({*b, e.length});
    g.adjacency_[*b].push_back({*a, e.length});
    g.edges_.emplace_back(std::min(*a, *b), std::max(*a, *b));
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& l, const Neighbor& r) { return l.index < r.index; });
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  return g;
}

/// Reads the line-oriented roadmap format:
///   V <id> <x> <y>
///   E <id1> <id2> <length>
/// `#` starts a comment. Records may appear in any order.
inline RoadmapGraph parse_roadmap(std::istream& in) {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto tokens = detail::split_ws(view);
    if (tokens.empty()) continue;
    const auto bad = [&] {
      return Error(ErrorCode::MalformedRow,
                   "roadmap line " + std::to_string(line_no) + ": '" + std::string(detail::trim(line)) + "'",
                   line_no);
    };
    if (tokens.size() != 4) throw bad();
    if (tokens[0] == "V") {
      const auto id = detail::parse_uint(tokens[1]);
      const auto x = detail::parse_double(tokens[2]);
      const auto y = detail::parse_double(tokens[3]);
      if (!id || !x || !y) throw bad();
      vertices.push_back({VertexId{*id}, Point{*x, *y}});
    } else if (tokens[0] == "E") {
      const auto a = detail::parse_uint(tokens[1]);
      const auto b = detail::parse_uint(tokens[2]);
      const auto len = detail::parse_double(tokens[3]);
      if (!a || !b || !len) throw bad();
      edges.push_back({VertexId{*a}, VertexId{*b}, *len});
    } else {
      throw bad();
    }
  }
  return build_roadmap(std::move(vertices), edges);
}

inline RoadmapGraph load_roadmap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileError, "cannot open roadmap '" + path + "'");
  try {
    return parse_roadmap(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what(), e.line());
  }
}

}  // namespace csplace
