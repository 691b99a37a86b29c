#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "csplace/detail/parallel.hpp"
#include "csplace/detail/text.hpp"
#include "csplace/error.hpp"
#include "csplace/graph.hpp"
#include "csplace/heatmap.hpp"
#include "csplace/paths.hpp"
#include "csplace/placement.hpp"
#include "csplace/ranking.hpp"
#include "csplace/trace.hpp"

namespace csplace {

/// Numeric parameters of one run.
struct PipelineParams {
  LinkConfig link;
  double separation_R = 0.0;
  std::size_t max_stations_k = 0;
  /// Defaults to the link threshold.
  std::optional<double> heatmap_cell;
  std::size_t threads = 1;
  std::size_t node_limit = 0;

  double effective_heatmap_cell() const noexcept { return heatmap_cell.value_or(link.threshold_t); }

  void validate() const {
    link.validate();
    if (!(separation_R >= 0.0) || !std::isfinite(separation_R)) {
      throw Error(ErrorCode::ConfigError, "separation R must be finite and non-negative");
    }
    if (heatmap_cell && (!(*heatmap_cell > 0.0) || !std::isfinite(*heatmap_cell))) {
      throw Error(ErrorCode::ConfigError, "heatmap cell must be finite and positive");
    }
  }
};

struct PipelineConfig {
  std::string roadmap_path;
  std::vector<std::string> trace_paths;
  PipelineParams params;
  std::string output_dir;
  bool dump_matrices = false;
};

struct PipelineResult {
  DistanceMatrix distances;
  ConflictMatrix conflicts;
  RatingVector ratings;
  PlacementSolution solution;
  HeatmapGrid heatmap;
  std::size_t frame_count = 0;
  std::size_t trace_points = 0;
  std::size_t linked_observations = 0;
};

/// Frames rated per parallel batch before they are folded in order.
inline constexpr std::size_t kFrameBatch = 256;

/**
 * Link, rate and accumulate all frames, build the separation constraints and
 * solve the placement. Frames are rated in parallel batches; the per-frame
 * vectors are then added in frame order, so the result is bitwise identical
 * for any thread count.
 */
inline PipelineResult run_pipeline(const RoadmapGraph& roadmap, std::span<const TraceFrame> frames,
                                   const PipelineParams& params) {
  params.validate();
  validate_frames(frames);
  if (roadmap.size() == 0) throw Error(ErrorCode::InvalidArgument, "roadmap has no candidates");
  const std::size_t nc = roadmap.size();
  const std::size_t threads = std::max<std::size_t>(1, params.threads);

  PipelineResult result;
  result.distances = all_pairs_shortest(roadmap, threads);
  result.frame_count = frames.size();

  const DistanceMatrix* dist =
      params.link.distance_mode == DistanceMode::ShortestPath ? &result.distances : nullptr;
  RatingVector total{std::vector<double>(nc, 0.0), RatingKind::Accumulated};
  std::vector<RatingVector> batch;
  std::vector<std::size_t> linked;
  for (std::size_t begin = 0; begin < frames.size(); begin += kFrameBatch) {
    const std::size_t count = std::min(kFrameBatch, frames.size() - begin);
    batch.assign(count, {});
    linked.assign(count, 0);
    detail::parallel_for(count, threads, [&](std::size_t i) {
      const auto links = build_frame_links(frames[begin + i], roadmap, params.link, dist);
      linked[i] = links.linked_trucks();
      batch[i] = rate_frame(links);
    });
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t k = 0; k < nc; ++k) total.values[k] += batch[i].values[k];
      result.linked_observations += linked[i];
      result.trace_points += frames[begin + i].positions.size();
    }
  }
  result.ratings = std::move(total);

  result.conflicts = build_conflict_matrix(result.distances, params.separation_R);
  PlacementProblem problem{result.ratings.values, result.conflicts, params.max_stations_k};
  result.solution = solve_exact(problem, SolverOptions{params.node_limit});

  const double cell = params.effective_heatmap_cell();
  result.heatmap = build_heatmap(frames, cell, roadmap_bounds(roadmap, cell));
  return result;
}

// ---------------------------------------------------------------------------
// Output files

inline void write_ratings_csv(std::ostream& out, const RoadmapGraph& roadmap, const RatingVector& ratings) {
  out << "candidate_id,rating\n";
  for (std::size_t k = 0; k < ratings.size(); ++k) {
    out << roadmap.id(k).value << ',' << detail::format_double(ratings[k]) << '\n';
  }
}

/// Same rows sorted by rating, highest first (ties by id).
inline void write_ranked_ratings_csv(std::ostream& out, const RoadmapGraph& roadmap, const RatingVector& ratings) {
  std::vector<std::size_t> order(ratings.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ratings[a] > ratings[b]; });
  out << "candidate_id,rating\n";
  for (const std::size_t k : order) out << roadmap.id(k).value << ',' << detail::format_double(ratings[k]) << '\n';
}

inline void write_solution_csv(std::ostream& out, const RoadmapGraph& roadmap, const RatingVector& ratings,
                               const PlacementSolution& solution, const PipelineParams& params) {
  out << "candidate_id,selected,rating\n";
  for (std::size_t k = 0; k < ratings.size(); ++k) {
    out << roadmap.id(k).value << ',' << int{solution.selected[k]} << ',' << detail::format_double(ratings[k])
        << '\n';
  }
  out << "# objective=" << detail::format_double(solution.objective) << " k=" << params.max_stations_k
      << " R=" << detail::format_double(params.separation_R) << " node_count=" << solution.node_count
      << " optimal=" << (solution.optimal ? "true" : "false") << '\n';
}

template <typename T>
void write_matrix_csv(std::ostream& out, const RoadmapGraph& roadmap, const Matrix<T>& m) {
  out << "candidate_id";
  for (std::size_t k = 0; k < m.cols(); ++k) out << ',' << roadmap.id(k).value;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << roadmap.id(r).value;
    for (const T& v : m.row(r)) {
      if constexpr (std::is_floating_point_v<T>) {
        out << ',' << (std::isinf(v) ? std::string("inf") : detail::format_double(v));
      } else {
        out << ',' << +v;
      }
    }
    out << '\n';
  }
}

inline void write_summary(std::ostream& out, const RoadmapGraph& roadmap, const PipelineResult& result,
                          const PipelineParams& params) {
  out << "candidates=" << roadmap.size() << '\n'
      << "edges=" << roadmap.edge_count() << '\n'
      << "frames=" << result.frame_count << '\n'
      << "trace_points=" << result.trace_points << '\n'
      << "linked_observations=" << result.linked_observations << '\n'
      << "threshold_t=" << detail::format_double(params.link.threshold_t) << '\n'
      << "distance_mode="
      << (params.link.distance_mode == DistanceMode::Euclidean ? "euclidean" : "shortest-path") << '\n'
      << "separation_R=" << detail::format_double(params.separation_R) << '\n'
      << "max_k=" << params.max_stations_k << '\n'
      << "objective=" << detail::format_double(result.solution.objective) << '\n'
      << "selected_count=" << result.solution.count() << '\n'
      << "selected_ids=";
  bool first = true;
  for (const std::size_t k : result.solution.selected_indices()) {
    out << (first ? "" : " ") << roadmap.id(k).value;
    first = false;
  }
  out << '\n'
      << "optimal=" << (result.solution.optimal ? "true" : "false") << '\n'
      << "node_count=" << result.solution.node_count << '\n'
      << "heatmap_cell=" << detail::format_double(result.heatmap.cell_size) << '\n'
      << "heatmap_size=" << result.heatmap.width() << 'x' << result.heatmap.height() << '\n'
      << "heatmap_out_of_bounds=" << result.heatmap.out_of_bounds << '\n';
}

namespace detail {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileError, "cannot write '" + path.string() + "'");
  writer(out);
  if (!out) throw Error(ErrorCode::FileError, "write failed for '" + path.string() + "'");
}

}  // namespace detail

inline void write_outputs(const PipelineConfig& cfg, const RoadmapGraph& roadmap, const PipelineResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::FileError, "cannot create output directory '" + cfg.output_dir + "'");

  detail::write_file(dir / "ratings.csv", [&](std::ostream& o) { write_ratings_csv(o, roadmap, result.ratings); });
  detail::write_file(dir / "ratings_ranked.csv",
                     [&](std::ostream& o) { write_ranked_ratings_csv(o, roadmap, result.ratings); });
  detail::write_file(dir / "solution.csv", [&](std::ostream& o) {
    write_solution_csv(o, roadmap, result.ratings, result.solution, cfg.params);
  });
  detail::write_file(dir / "heatmap.csv", [&](std::ostream& o) { write_heatmap_csv(o, result.heatmap); });
  detail::write_file(dir / "heatmap.pgm", [&](std::ostream& o) { write_heatmap_pgm(o, result.heatmap); });
  detail::write_file(dir / "summary.txt", [&](std::ostream& o) { write_summary(o, roadmap, result, cfg.params); });
  if (cfg.dump_matrices) {
    detail::write_file(dir / "distances.csv",
                       [&](std::ostream& o) { write_matrix_csv(o, roadmap, result.distances.matrix()); });
    detail::write_file(dir / "conflicts.csv",
                       [&](std::ostream& o) { write_matrix_csv(o, roadmap, result.conflicts.matrix()); });
  }
}

/// Loads the inputs named in `cfg`, runs the pipeline and writes every output file.
inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  cfg.params.validate();
  if (cfg.output_dir.empty()) throw Error(ErrorCode::ConfigError, "no output directory given");
  const RoadmapGraph roadmap = load_roadmap(cfg.roadmap_path);
  const auto frames = load_traces(cfg.trace_paths);
  auto result = run_pipeline(roadmap, frames, cfg.params);
  write_outputs(cfg, roadmap, result);
  return result;
}

}  // namespace csplace
