#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "csplace/error.hpp"
#include "csplace/paths.hpp"
#include "csplace/ranking.hpp"

namespace csplace {

/// Choose at most `max_stations` candidates, no two of them in conflict,
/// maximizing the summed rating.
struct PlacementProblem {
  std::vector<double> ratings;
  ConflictMatrix conflicts;
  std::size_t max_stations = 0;

  std::size_t size() const noexcept { return ratings.size(); }

  void validate() const {
    if (ratings.size() != conflicts.size()) {
      throw Error(ErrorCode::DimensionMismatch, std::to_string(ratings.size()) + " ratings for a " +
                                                    std::to_string(conflicts.size()) + "-candidate conflict matrix");
    }
    for (const double r : ratings) {
      if (!(r >= 0.0) || !std::isfinite(r)) {
        throw Error(ErrorCode::InvalidArgument, "ratings must be finite and non-negative");
      }
    }
  }
};

struct PlacementSolution {
  std::vector<std::uint8_t> selected;
  double objective = 0.0;
  bool optimal = false;
  std::size_t node_count = 0;

  std::vector<std::size_t> selected_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < selected.size(); ++i) {
      if (selected[i]) out.push_back(i);
    }
    return out;
  }
  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count(selected.begin(), selected.end(), std::uint8_t{1}));
  }
};

/// Objective of a selection, summed in ascending candidate order. Both solvers
/// score every selection this way, so equal selections have bitwise equal
/// objectives.
inline double selection_objective(const std::vector<double>& ratings, const std::vector<std::uint8_t>& selected) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    if (selected[i]) sum += ratings[i];
  }
  return sum;
}

namespace detail {

/// Lexicographic order on 0/1 vectors (0 < 1).
inline bool lex_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Higher objective wins; exact ties go to the lexicographically smaller vector.
inline bool better(double obj_a, const std::vector<std::uint8_t>& a, double obj_b,
                   const std::vector<std::uint8_t>& b) {
  return obj_a > obj_b || (obj_a == obj_b && lex_less(a, b));
}

}  // namespace detail

enum class BoundKind {
  /// Sum of the largest remaining-budget many selectable ratings.
  Cardinality,
  /// As above, but over the leaders of a greedy clique partition of the
  /// selectable candidates in the conflict graph. A clique holds at most one
  /// selected candidate, so this never exceeds the cardinality bound.
  CliqueCover,
};

struct SolverOptions {
  /// Stop after this many expanded nodes and report `optimal = false`; 0 means no limit.
  std::size_t node_limit = 0;
  BoundKind bound = BoundKind::CliqueCover;
};

/**
 * Exact best-first branch-and-bound.
 *
 * Candidates with positive rating are ordered by rating (descending, index on
 * ties). A node fixes a prefix of that order: some candidates included, the
 * rest excluded or blocked by a conflict with an included one. Branching takes
 * the first still-selectable candidate (include / exclude). The bound is the
 * included sum plus the largest remaining-budget many selectable ratings,
 * optionally tightened by a clique cover (see BoundKind).
 *
 * Pruning keeps a small absolute slack so that every selection whose objective
 * could tie the incumbent is still scored, which makes the lexicographic
 * tie-break match exhaustive enumeration exactly. Zero-rated candidates are
 * never selected: they leave the objective unchanged and lose the tie-break.
 */
inline PlacementSolution solve_exact(const PlacementProblem& prob, const SolverOptions& options = {}) {
  prob.validate();
  const std::size_t n = prob.size();
  const auto& ratings = prob.ratings;
  const auto& conflicts = prob.conflicts;
  const std::size_t k = prob.max_stations;

  std::vector<std::size_t> order;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ratings[i] > 0.0) {
      order.push_back(i);
      total += ratings[i];
    }
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ratings[a] != ratings[b] ? ratings[a] > ratings[b] : a < b;
  });
  const double slack = 1e-10 * total;

  struct Node {
    double bound;
    double included_sum;
    std::size_t next;  // position in `order`
    std::vector<std::size_t> included;
    std::size_t seq;
  };
  struct ByBound {
    bool operator()(const Node& a, const Node& b) const {
      return a.bound != b.bound ? a.bound < b.bound : a.seq > b.seq;
    }
  };

  const auto blocked = [&](const std::vector<std::size_t>& included, std::size_t c) {
    for (const std::size_t i : included) {
      if (conflicts.conflicts(i, c)) return true;
    }
    return false;
  };
  std::vector<std::vector<std::size_t>> cliques;
  const auto bound_of = [&](const std::vector<std::size_t>& included, double included_sum, std::size_t next) {
    double bound = included_sum;
    const std::size_t budget = k - included.size();
    if (options.bound == BoundKind::Cardinality) {
      std::size_t taken = 0;
      for (std::size_t pos = next; pos < order.size() && taken < budget; ++pos) {
        if (!blocked(included, order[pos])) {
          bound += ratings[order[pos]];
          ++taken;
        }
      }
      return bound;
    }
    // Candidates arrive in descending rating, so each clique's first member is
    // its maximum and leaders appear in descending order. Once `budget`
    // cliques exist, later arrivals cannot change the sum of the top leaders.
    cliques.clear();
    for (std::size_t pos = next; pos < order.size() && budget > 0; ++pos) {
      const std::size_t c = order[pos];
      if (blocked(included, c)) continue;
      bool placed = false;
      for (auto& clique : cliques) {
        if (std::all_of(clique.begin(), clique.end(), [&](std::size_t m) { return conflicts.conflicts(m, c); })) {
          clique.push_back(c);
          placed = true;
          break;
        }
      }
      if (placed) continue;
      bound += ratings[c];
      cliques.push_back({c});
      if (cliques.size() == budget) break;
    }
    return bound;
  };

  PlacementSolution best;
  best.selected.assign(n, 0);
  best.objective = 0.0;
  best.optimal = true;

  std::priority_queue<Node, std::vector<Node>, ByBound> open;
  std::size_t seq = 0;
  open.push(Node{bound_of({}, 0.0, 0), 0.0, 0, {}, seq++});
  std::vector<std::uint8_t> scratch(n, 0);

  while (!open.empty()) {
    if (open.top().bound < best.objective - slack) break;
    if (options.node_limit != 0 && best.node_count >= options.node_limit) {
      best.optimal = false;
      break;
    }
    Node node = open.top();
    open.pop();
    ++best.node_count;

    std::fill(scratch.begin(), scratch.end(), std::uint8_t{0});
    for (const std::size_t i : node.included) scratch[i] = 1;
    const double objective = selection_objective(ratings, scratch);
    if (detail::better(objective, scratch, best.objective, best.selected)) {
      best.objective = objective;
      best.selected = scratch;
    }

    if (node.included.size() >= k) continue;
    std::size_t pos = node.next;
    while (pos < order.size() && blocked(node.included, order[pos])) ++pos;
    if (pos == order.size()) continue;
    const std::size_t c = order[pos];

    Node take{0.0, node.included_sum + ratings[c], pos + 1, node.included, seq++};
    take.included.push_back(c);
    take.bound = bound_of(take.included, take.included_sum, take.next);
    if (take.bound >= best.objective - slack) open.push(std::move(take));

    Node skip{0.0, node.included_sum, pos + 1, std::move(node.included), seq++};
    skip.bound = bound_of(skip.included, skip.included_sum, skip.next);
    if (skip.bound >= best.objective - slack) open.push(std::move(skip));
  }
  return best;
}

inline constexpr std::size_t kMaxBruteForceCandidates = 22;

/// Exhaustive enumeration of all 2^n selections; the reference for solve_exact.
inline PlacementSolution solve_bruteforce(const PlacementProblem& prob) {
  prob.validate();
  const std::size_t n = prob.size();
  if (n > kMaxBruteForceCandidates) {
    throw Error(ErrorCode::InstanceTooLarge,
                std::to_string(n) + " candidates exceed the enumeration limit of 22");
  }
  // Candidate i is bit (n - 1 - i), so increasing mask order is increasing
  // lexicographic order of the selection vector.
  const auto bit = [n](std::size_t i) { return std::uint32_t{1} << (n - 1 - i); };
  std::vector<std::uint32_t> conflict_mask(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (prob.conflicts.conflicts(i, j)) conflict_mask[i] |= bit(j);
    }
  }

  PlacementSolution best;
  best.selected.assign(n, 0);
  best.optimal = true;
  std::uint32_t best_mask = 0;
  const std::uint32_t end = n == 0 ? 1 : (std::uint32_t{1} << n);
  for (std::uint32_t mask = 1; mask < end && mask != 0; ++mask) {
    ++best.node_count;
    if (static_cast<std::size_t>(std::popcount(mask)) > prob.max_stations) continue;
    bool feasible = true;
    double objective = 0.0;
    for (std::size_t i = 0; i < n && feasible; ++i) {
      if (mask & bit(i)) {
        feasible = (conflict_mask[i] & mask) == 0;
        objective += prob.ratings[i];
      }
    }
    if (feasible && objective > best.objective) {
      best.objective = objective;
      best_mask = mask;
    }
  }
  for (std::size_t i = 0; i < n; ++i) best.selected[i] = (best_mask & bit(i)) ? 1 : 0;
  best.objective = selection_objective(prob.ratings, best.selected);
  return best;
}

struct ValidationReport {
  std::vector<std::pair<std::size_t, std::size_t>> violated_pairs;
  bool budget_violated = false;
  std::size_t selected_count = 0;
  double recomputed_objective = 0.0;
  bool objective_matches = false;

  bool feasible() const noexcept { return violated_pairs.empty() && !budget_violated; }
  bool passed() const noexcept { return feasible() && objective_matches; }
};

/// Re-checks a solution against the separation and budget constraints and
/// recomputes its objective.
inline ValidationReport validate_solution(const PlacementProblem& prob, const PlacementSolution& sol) {
  if (sol.selected.size() != prob.size() || prob.conflicts.size() != prob.size()) {
    throw Error(ErrorCode::DimensionMismatch, "solution length does not match the problem");
  }
  ValidationReport report;
  const auto chosen = sol.selected_indices();
  report.selected_count = chosen.size();
  report.budget_violated = chosen.size() > prob.max_stations;
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      if (prob.conflicts.conflicts(chosen[a], chosen[b])) report.violated_pairs.emplace_back(chosen[a], chosen[b]);
    }
  }
  report.recomputed_objective = selection_objective(prob.ratings, sol.selected);
  report.objective_matches = report.recomputed_objective == sol.objective;
  return report;
}

}  // namespace csplace
