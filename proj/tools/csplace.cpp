// csplace: rate charging-station candidates from truck traces and pick a
// separated subset.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csplace/csplace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Charging-station placement from truck position traces"};
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  csplace::PipelineConfig cfg;
  std::string mode = "euclidean";
  std::optional<double> snap_radius;
  std::optional<double> heatmap_cell;
  std::size_t threads = csplace::detail::default_thread_count();

  app.add_option("--roadmap", cfg.roadmap_path, "Roadmap file (V/E records)")->required();
  app.add_option("--trace", cfg.trace_paths, "Trace CSV file(s): timestamp,truck_id,x,y")->required();
  app.add_option("--threshold-t", cfg.params.link.threshold_t, "Link threshold in meters")->required();
  app.add_option("--separation-R", cfg.params.separation_R, "Minimum shortest-path separation in meters")
      ->required();
  app.add_option("--max-k", cfg.params.max_stations_k, "Maximum number of stations")->required();
  app.add_option("--distance-mode", mode, "Truck-to-candidate distance")
      ->check(CLI::IsMember({"euclidean", "shortest-path"}));
  app.add_option("--snap-radius", snap_radius, "Snap radius for shortest-path mode (default: threshold-t)");
  app.add_option("--heatmap-cell", heatmap_cell, "Heatmap cell size in meters (default: threshold-t)");
  app.add_option("--threads", threads, "Worker threads for frame rating")->check(CLI::PositiveNumber);
  app.add_option("--node-limit", cfg.params.node_limit, "Branch-and-bound node budget (0 = unlimited)");
  app.add_flag("--dump-matrices", cfg.dump_matrices, "Also write distances.csv and conflicts.csv");
  app.add_option("--out", cfg.output_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  cfg.params.link.distance_mode =
      mode == "shortest-path" ? csplace::DistanceMode::ShortestPath : csplace::DistanceMode::Euclidean;
  cfg.params.link.snap_radius = snap_radius;
  cfg.params.heatmap_cell = heatmap_cell;
  cfg.params.threads = threads;

  try {
    const auto result = csplace::run_pipeline(cfg);
    std::printf("selected %zu of %zu candidates, objective %s (%s, %zu nodes)\n", result.solution.count(),
                result.ratings.size(), csplace::detail::format_double(result.solution.objective).c_str(),
                result.solution.optimal ? "optimal" : "node limit reached", result.solution.node_count);
  } catch (const csplace::Error& e) {
    std::cerr << "csplace: " << e.what() << '\n';
    return e.is_config_error() ? kExitConfig : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "csplace: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
