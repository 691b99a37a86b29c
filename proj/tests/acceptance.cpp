// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "csplace/csplace.hpp"
#include "test_support.hpp"

namespace {

using namespace csplace;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Branch-and-bound vs exhaustive enumeration.
Outcome ilp_oracle_equivalence() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> size(1, 18);
  std::uniform_real_distribution<double> rating(0.0, 10.0);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  const auto start = Clock::now();
  std::size_t mismatches = 0, infeasible = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = size(rng);
    std::vector<double> r(n);
    for (auto& v : r) v = rating(rng);
    auto conflicts = testing::random_conflicts(rng, n, density(rng));
    std::uniform_int_distribution<std::size_t> budget(0, n);
    const PlacementProblem prob{r, std::move(conflicts), budget(rng)};
    const auto exact = solve_exact(prob);
    const auto brute = solve_bruteforce(prob);
    if (exact.objective != brute.objective) ++mismatches;
    if (!validate_solution(prob, exact).passed() || !validate_solution(prob, brute).passed()) ++infeasible;
  }
  const double elapsed = seconds_since(start);
  Outcome o;
  o.pass = mismatches == 0 && infeasible == 0 && elapsed < 60.0;
  o.detail = "500 instances, mismatches=" + std::to_string(mismatches) + " infeasible=" +
             std::to_string(infeasible) + " time=" + std::to_string(elapsed) + "s (limit 60s)";
  return o;
}

// 2 + 3. Reduced rating vs one step of the full importance recurrence, and
// per-frame mass equal to the number of linked trucks.
struct RatingChecks {
  Outcome oracle;
  Outcome mass;
};

RatingChecks rating_checks() {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<std::size_t> candidates(1, 20);
  std::uniform_int_distribution<std::size_t> trucks(0, 20);
  std::uniform_real_distribution<double> sparsity(0.0, 0.95);
  double max_diff = 0.0, max_mass_err = 0.0;
  std::size_t frames_checked = 0;

  const auto check_mass = [&](const FrameLinkMatrix& links, const RatingVector& p) {
    double mass = 0.0;
    for (const double v : p.values) mass += v;
    const double expected = static_cast<double>(links.linked_trucks());
    const double err = expected == 0.0 ? std::abs(mass) : std::abs(mass - expected) / expected;
    max_mass_err = std::max(max_mass_err, err);
    ++frames_checked;
  };

  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_connected_roadmap(rng, candidates(rng), 0.2);
    const auto links = testing::random_links(rng, trucks(rng), g.size(), sparsity(rng));
    const auto reduced = rate_frame(links);
    const auto google = build_google_matrix(assemble_split_matrix(g, links));
    const auto oracle = one_step_importance(google, g.size());
    for (std::size_t k = 0; k < g.size(); ++k) max_diff = std::max(max_diff, std::abs(reduced[k] - oracle[k]));
    check_mass(links, reduced);
  }
  // Frames produced by the distance-decay linking on real geometry.
  const auto g = testing::random_connected_roadmap(rng, 20, 0.1);
  const auto frames = testing::hotspot_trace(rng, {{30, 30}, {70, 60}}, 200, 8, 10.0, 4, 100.0);
  for (const auto& f : frames) {
    const auto links = build_frame_links(f, g, LinkConfig{15.0});
    check_mass(links, rate_frame(links));
  }

  RatingChecks out;
  out.oracle.pass = max_diff < 1e-12;
  out.oracle.detail = "200 split matrices, max |diff|=" + detail::format_double(max_diff) + " (limit 1e-12)";
  out.mass.pass = max_mass_err < 1e-9;
  out.mass.detail = std::to_string(frames_checked) + " frames, max relative error=" +
                    detail::format_double(max_mass_err) + " (limit 1e-9)";
  return out;
}

// 4. Scaling all link weights leaves ratings and the selected set unchanged.
Outcome scaling_invariance() {
  std::mt19937_64 rng(3003);
  double max_diff = 0.0;
  std::size_t set_changes = 0;
  std::size_t scenarios = 0;
  for (int scenario = 0; scenario < 20; ++scenario) {
    const auto g = testing::random_connected_roadmap(rng, 25, 0.1);
    const auto d = all_pairs_shortest(g);
    const auto conflicts = build_conflict_matrix(d, 30.0);
    const auto frames = testing::hotspot_trace(rng, {{25, 25}, {75, 70}}, 40, 5, 12.0, 5, 100.0);
    std::vector<FrameLinkMatrix> links;
    for (const auto& f : frames) links.push_back(build_frame_links(f, g, LinkConfig{20.0}));

    std::vector<std::uint8_t> reference;
    std::vector<RatingVector> reference_frames;
    for (const double c : {1.0, 1e-6, 1e6}) {
      std::vector<RatingVector> rated;
      for (const auto& l : links) {
        Matrix<double> w = l.weights();
        for (std::size_t m = 0; m < w.rows(); ++m) {
          for (double& v : w.row(m)) v *= c;
        }
        rated.push_back(rate_frame(FrameLinkMatrix(std::move(w))));
      }
      const auto total = accumulate(rated);
      const auto sol = solve_exact(PlacementProblem{total.values, conflicts, 4});
      if (c == 1.0) {
        reference = sol.selected;
        reference_frames = rated;
        continue;
      }
      for (std::size_t f = 0; f < rated.size(); ++f) {
        for (std::size_t k = 0; k < rated[f].size(); ++k) {
          max_diff = std::max(max_diff, std::abs(rated[f][k] - reference_frames[f][k]));
        }
      }
      if (sol.selected != reference) ++set_changes;
    }
    ++scenarios;
  }
  Outcome o;
  o.pass = max_diff < 1e-12 && set_changes == 0;
  o.detail = std::to_string(scenarios) + " scenarios x c in {1e-6,1,1e6}, max |diff|=" +
             detail::format_double(max_diff) + " (limit 1e-12), selection changes=" + std::to_string(set_changes);
  return o;
}

// 5. Dijkstra vs Floyd-Warshall, symmetry, triangle inequality.
Outcome dijkstra_correctness() {
  std::mt19937_64 rng(5005);
  std::uniform_int_distribution<std::size_t> size(1, 30);
  std::uniform_real_distribution<double> extra(0.0, 0.3);
  double max_diff = 0.0;
  std::size_t asymmetric = 0, triangle = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_connected_roadmap(rng, size(rng), extra(rng));
    const auto d = all_pairs_shortest(g);
    const auto oracle = testing::floyd_warshall(g);
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (d(i, i) != 0.0) ++asymmetric;
      for (std::size_t j = 0; j < n; ++j) {
        max_diff = std::max(max_diff, std::abs(d(i, j) - oracle(i, j)));
        if (d(i, j) != d(j, i)) ++asymmetric;
        for (std::size_t k = 0; k < n; ++k) {
          if (d(i, j) > d(i, k) + d(k, j) + 1e-9) ++triangle;
        }
      }
    }
  }
  Outcome o;
  o.pass = max_diff <= 1e-9 && asymmetric == 0 && triangle == 0;
  o.detail = "100 graphs, max |diff|=" + detail::format_double(max_diff) + " (limit 1e-9), symmetry violations=" +
             std::to_string(asymmetric) + ", triangle violations=" + std::to_string(triangle);
  return o;
}

// 6. Distance exactly R is a conflict and blocks co-selection.
Outcome separation_boundary() {
  const double R = 7.25;
  const auto g = build_roadmap({{VertexId{0}, {0, 0}}, {VertexId{1}, {R, 0}}},
                               std::vector<Edge>{{VertexId{0}, VertexId{1}, R}});
  const auto d = all_pairs_shortest(g);
  const auto a = build_conflict_matrix(d, R);
  const auto sol = solve_exact(PlacementProblem{{1.0, 1.0}, a, 2});
  const auto brute = solve_bruteforce(PlacementProblem{{1.0, 1.0}, a, 2});
  const auto relaxed = solve_exact(PlacementProblem{{1.0, 1.0}, build_conflict_matrix(d, std::nextafter(R, 0.0)), 2});
  Outcome o;
  o.pass = d(0, 1) == R && a(0, 1) == 0 && sol.count() == 1 && brute.count() == 1 && relaxed.count() == 2;
  o.detail = "D=R gives A=" + std::to_string(int{a(0, 1)}) + ", selected " + std::to_string(sol.count()) +
             " of 2 (brute force " + std::to_string(brute.count()) + "); just below R selects " +
             std::to_string(relaxed.count());
  return o;
}

// 7. Two hotspots on a 10x10 grid.
Outcome hotspot_scenario() {
  const auto g = testing::grid_roadmap(10, 10);
  const std::vector<Point> centers{{2, 2}, {7, 6}};
  std::mt19937_64 rng(7007);
  const auto frames = testing::hotspot_trace(rng, centers, 200, 6, 0.5, 6, 9.0);
  PipelineParams params;
  params.link.threshold_t = 1.5;
  params.separation_R = 3.0;
  params.max_stations_k = 2;
  params.heatmap_cell = 1.0;

  const auto start = Clock::now();
  params.threads = 1;
  const auto first = run_pipeline(g, frames, params);
  params.threads = 4;
  const auto second = run_pipeline(g, frames, params);
  const double elapsed = seconds_since(start);

  const auto chosen = first.solution.selected_indices();
  std::size_t covered = 0;
  for (const auto& c : centers) {
    // Within one edge of the center vertex (unit pitch).
    if (std::any_of(chosen.begin(), chosen.end(),
                    [&](std::size_t k) { return first.distances(k, *g.index_of(VertexId{
                                                    static_cast<std::uint64_t>(c.y * 10 + c.x)})) <= 1.0; })) {
      ++covered;
    }
  }
  const bool deterministic =
      first.ratings.values == second.ratings.values && first.solution.selected == second.solution.selected;
  Outcome o;
  o.pass = chosen.size() == 2 && covered == 2 && deterministic && elapsed < 5.0;
  std::string ids;
  for (const auto k : chosen) ids += (ids.empty() ? "" : ",") + std::to_string(g.id(k).value);
  o.detail = "selected {" + ids + "}, hotspots covered=" + std::to_string(covered) +
             "/2, deterministic=" + (deterministic ? "yes" : "no") + ", time=" + std::to_string(elapsed) +
             "s (limit 5s)";
  return o;
}

// 8. k = 5 on a 200-candidate roadmap.
Outcome five_stations_on_200() {
  std::mt19937_64 rng(8008);
  // 10 x 20 aisle grid, 5 m pitch: x in [0, 95], y in [0, 45].
  const auto g = testing::grid_roadmap(10, 20, 5.0);
  const auto frames =
      testing::hotspot_trace(rng, {{10, 10}, {80, 8}, {45, 25}, {15, 40}, {85, 38}, {60, 15}}, 500, 4, 4.0, 10, 95.0);
  PipelineParams params;
  params.link.threshold_t = 7.5;
  params.separation_R = 25.0;
  params.max_stations_k = 5;
  params.threads = 4;

  const auto start = Clock::now();
  const auto result = run_pipeline(g, frames, params);
  const double elapsed = seconds_since(start);

  const auto chosen = result.solution.selected_indices();
  double min_sep = kUnreachable;
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    for (std::size_t b = a + 1; b < chosen.size(); ++b) min_sep = std::min(min_sep, result.distances(chosen[a], chosen[b]));
  }
  Outcome o;
  o.pass = !chosen.empty() && chosen.size() <= 5 && min_sep > params.separation_R && result.solution.optimal &&
           elapsed < 30.0;
  o.detail = std::to_string(chosen.size()) + " stations, min separation=" + detail::format_double(min_sep) +
             " > R=25, nodes=" + std::to_string(result.solution.node_count) + ", time=" +
             std::to_string(elapsed) + "s (limit 30s)";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    if (!o.pass) ++failures;
  };
  const auto guarded = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    try {
      report(id, name, fn());
    } catch (const std::exception& e) {
      report(id, name, Outcome{false, std::string("exception: ") + e.what()});
    }
  };

  guarded(1, "ILP oracle equivalence", ilp_oracle_equivalence);
  RatingChecks rc;
  try {
    rc = rating_checks();
  } catch (const std::exception& e) {
    rc.oracle = rc.mass = Outcome{false, std::string("exception: ") + e.what()};
  }
  report(2, "Rating oracle equivalence", rc.oracle);
  report(3, "Frame mass", rc.mass);
  guarded(4, "Scaling invariance", scaling_invariance);
  guarded(5, "Dijkstra correctness", dijkstra_correctness);
  guarded(6, "Separation boundary", separation_boundary);
  guarded(7, "Hotspot scenario", hotspot_scenario);
  guarded(8, "k = 5 on 200 candidates", five_stations_on_200);

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
