#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csplace/detail/text.hpp"
#include "csplace/error.hpp"
#include "csplace/frame_links.hpp"
#include "csplace/graph.hpp"
#include "csplace/matrix.hpp"
#include "csplace/paths.hpp"

namespace csplace {

struct TruckPosition {
  std::int64_t truck_id = 0;
  Point position;
};

/// All truck positions sharing one timestamp (seconds).
struct TraceFrame {
  double timestamp = 0.0;
  std::vector<TruckPosition> positions;
};

/// One CSV record, kept with its source line for error reporting.
struct TraceRow {
  double timestamp = 0.0;
  std::int64_t truck_id = 0;
  Point position;
  std::size_t line = 0;
};

/**
 * Reads `timestamp,truck_id,x,y` records. A header line naming the columns is
 * optional; when present, columns are located by name and any additional
 * columns (for example a reserved `soc` column) are ignored. Without a header
 * the first four fields are taken positionally. Blank lines are skipped.
 */
inline std::vector<TraceRow> parse_trace_rows(std::istream& in) {
  static constexpr std::array<std::string_view, 4> kColumns{"timestamp", "truck_id", "x", "y"};
  std::array<std::size_t, 4> column{0, 1, 2, 3};
  std::size_t min_fields = 4;
  bool first = true;

  std::vector<TraceRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, ',');

    if (first) {
      first = false;
      if (std::find(fields.begin(), fields.end(), kColumns[0]) != fields.end()) {
        min_fields = 0;
        for (std::size_t c = 0; c < kColumns.size(); ++c) {
          const auto it = std::find(fields.begin(), fields.end(), kColumns[c]);
          if (it == fields.end()) {
            throw Error(ErrorCode::MalformedRow,
                        "trace header lacks column '" + std::string(kColumns[c]) + "'", line_no);
          }
          column[c] = static_cast<std::size_t>(it - fields.begin());
          min_fields = std::max(min_fields, column[c] + 1);
        }
        continue;
      }
    }

    const auto bad = [&] {
      return Error(ErrorCode::MalformedRow,
                   "trace line " + std::to_string(line_no) + ": '" + std::string(detail::trim(line)) + "'",
                   line_no);
    };
    if (fields.size() < min_fields) throw bad();
    const auto t = detail::parse_double(fields[column[0]]);
    const auto id = detail::parse_int(fields[column[1]]);
    const auto x = detail::parse_double(fields[column[2]]);
    const auto y = detail::parse_double(fields[column[3]]);
    if (!t || !id || !x || !y) throw bad();
    rows.push_back({*t, *id, Point{*x, *y}, line_no});
  }
  return rows;
}

/// Groups rows into frames in ascending timestamp order; trucks within a frame
/// are ordered by id.
inline std::vector<TraceFrame> group_frames(std::vector<TraceRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const TraceRow& a, const TraceRow& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.truck_id < b.truck_id;
  });
  std::vector<TraceFrame> frames;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (frames.empty() || frames.back().timestamp != r.timestamp) {
      frames.push_back({r.timestamp, {}});
    } else if (frames.back().positions.back().truck_id == r.truck_id) {
      throw Error(ErrorCode::DuplicateTruckInFrame,
                  "truck " + std::to_string(r.truck_id) + " appears twice at t=" +
                      detail::format_double(r.timestamp) + " (line " + std::to_string(r.line) + ")",
                  r.line);
    }
    frames.back().positions.push_back({r.truck_id, r.position});
  }
  return frames;
}

inline std::vector<TraceFrame> parse_trace(std::istream& in) { return group_frames(parse_trace_rows(in)); }

/// Reads and concatenates several trace files, then groups the union.
inline std::vector<TraceFrame> load_traces(std::span<const std::string> paths) {
  std::vector<TraceRow> all;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileError, "cannot open trace '" + path + "'");
    try {
      auto rows = parse_trace_rows(in);
      all.insert(all.end(), rows.begin(), rows.end());
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.what(), e.line());
    }
  }
  return group_frames(std::move(all));
}

/// Checks a hand-assembled trace: strictly ascending timestamps, unique trucks per frame.
inline void validate_frames(std::span<const TraceFrame> frames) {
  for (std::size_t f = 0; f < frames.size(); ++f) {
    if (!std::isfinite(frames[f].timestamp) || (f > 0 && !(frames[f - 1].timestamp < frames[f].timestamp))) {
      throw Error(ErrorCode::NonMonotoneTimestamps, "frame " + std::to_string(f) + " is out of order");
    }
    std::vector<std::int64_t> ids;
    for (const auto& p : frames[f].positions) ids.push_back(p.truck_id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      throw Error(ErrorCode::DuplicateTruckInFrame, "frame " + std::to_string(f) + " repeats a truck id");
    }
  }
}

enum class DistanceMode { Euclidean, ShortestPath };

struct LinkConfig {
  double threshold_t = 1.0;
  DistanceMode distance_mode = DistanceMode::Euclidean;
  /// Shortest-path mode only; defaults to threshold_t.
  std::optional<double> snap_radius{};

  double effective_snap_radius() const noexcept { return snap_radius.value_or(threshold_t); }

  void validate() const {
    if (!(threshold_t > 0.0) || !std::isfinite(threshold_t)) {
      throw Error(ErrorCode::ConfigError, "threshold_t must be finite and positive");
    }
    if (snap_radius && !(*snap_radius >= 0.0)) {
      throw Error(ErrorCode::ConfigError, "snap_radius must be non-negative");
    }
  }
};

/// Distance-decay link weight: 1 / (1 + d) up to and including the threshold, 0 beyond.
constexpr double link_weight(double distance, double threshold) noexcept {
  return distance <= threshold ? 1.0 / (1.0 + distance) : 0.0;
}

/**
 * Builds the truck-to-candidate weights of one frame.
 *
 * In shortest-path mode a truck is snapped to its nearest candidate (lowest
 * index on ties) if that candidate lies within the snap radius; the distance
 * to candidate k is then the straight segment to the snapped vertex plus the
 * roadmap distance onward. A truck that cannot be snapped gets an all-zero row.
 */
inline FrameLinkMatrix build_frame_links(const TraceFrame& frame, const RoadmapGraph& roadmap,
                                         const LinkConfig& cfg, const DistanceMatrix* dist = nullptr) {
  const std::size_t nc = roadmap.size();
  const std::size_t trucks = frame.positions.size();
  Matrix<double> w(trucks, nc, 0.0);
  const double t = cfg.threshold_t;

  if (cfg.distance_mode == DistanceMode::Euclidean) {
    for (std::size_t m = 0; m < trucks; ++m) {
      const Point& p = frame.positions[m].position;
      for (std::size_t k = 0; k < nc; ++k) w(m, k) = link_weight(euclidean(p, roadmap.position(k)), t);
    }
    return FrameLinkMatrix(std::move(w));
  }

  if (dist == nullptr) {
    throw Error(ErrorCode::MissingDistanceMatrix, "shortest-path linking needs a distance matrix");
  }
  if (dist->size() != nc) {
    throw Error(ErrorCode::DimensionMismatch, "distance matrix does not match the roadmap");
  }
  const double snap = cfg.effective_snap_radius();
  for (std::size_t m = 0; m < trucks; ++m) {
    const Point& p = frame.positions[m].position;
    std::optional<std::size_t> nearest;
    double best = kUnreachable;
    for (std::size_t k = 0; k < nc; ++k) {
      const double d = euclidean(p, roadmap.position(k));
      if (d < best) {
        best = d;
        nearest = k;
      }
    }
    if (!nearest || best > snap) continue;
    for (std::size_t k = 0; k < nc; ++k) {
      w(m, k) = link_weight(best + (*dist)(*nearest, k), t);
    }
  }
  return FrameLinkMatrix(std::move(w));
}

}  // namespace csplace
