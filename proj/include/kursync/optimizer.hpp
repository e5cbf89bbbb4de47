#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kursync/graph.hpp"
#include "kursync/state.hpp"
#include "kursync/types.hpp"

namespace kursync {

// One boundary configuration of the spread-containment analysis: oscillator
// `hi` pinned at the top of the spread, `lo` at the bottom, exactly D apart.
struct PairProblem {
  int hi = 0;  // 1-indexed oscillator at phi_lo + D
  int lo = 0;  // 1-indexed oscillator at the minimum phase
  Real D = 0;
  Real E0 = 0;
  const Graph* graph = nullptr;
};

enum class PairStatus {
  converged,  // minimum found with the energy budget inactive
  boundary,   // minimum sits on the energy-budget sphere
  infeasible  // empty feasible set: E0 < D^2/2 cannot place the pair D apart
};

struct PairBoundResult {
  int hi = 0;
  int lo = 0;
  Real min_denominator = 0;  // minimized coupling-term sum at the boundary
  Vector argmin;             // full phase vector attaining the minimum
  Real coupling_bound = 0;   // n |dev_hi - dev_lo| / min_denominator
  int starts_used = 0;
  PairStatus status = PairStatus::infeasible;
};

struct SolverOptions {
  int random_starts = 64;
  int max_iterations = 1000;
  Real objective_tol = 1e-10;
  Real step_tol = 1e-10;
  Real constraint_tol = 1e-10;
};

// Minimizes  sum_{i in N_hi} sin(phi_hi - phi_i) + sum_{j in N_lo} sin(phi_j
// - phi_lo)  subject to
//   (a) phi_hi = phi_lo + D        (b) sum phi = 0
//   (c) sum phi^2 <= E0            (d) phi_lo <= phi_m <= phi_hi for all m
// by multistart projected gradient on the n-2 interior phases ((a) and (b)
// eliminate phi_hi and phi_lo analytically).  Deterministic given the seed;
// `coupling_bound` is filled by k_star, not here.
PairBoundResult minimize_pair(const PairProblem& prob, std::uint64_t seed,
                              const SolverOptions& opts = {});

struct KStarResult {
  Real value = 0;
  int hi = 0, lo = 0;  // achieving pair (lexicographically smallest on ties);
                       // 0,0 when every pair is infeasible
  std::vector<PairBoundResult> pairs;  // all n(n-1)/2 pair outcomes
};

// Refined coupling bound: max over all oscillator pairs of
// n |dev_hi - dev_lo| / min_denominator.  Pairs whose boundary configuration
// is unreachable (infeasible) impose no constraint; if all are infeasible the
// result is 0 and only the energy bound is required.
// Requires 0 < D < pi and E0 < D^2.
KStarResult k_star(const Graph& g, const FrequencyVector& f, Real E0, Real D,
                   std::uint64_t seed, const SolverOptions& opts = {});
KStarResult k_star(const Graph& g, const FrequencyVector& f,
                   const PhaseVector& phi0, Real D, std::uint64_t seed,
                   const SolverOptions& opts = {});

struct OracleResult {
  Real minimum = 0;
  bool feasible = false;
};

// Independent check for n <= 5: grids the interior phases, filters by the
// constraints, and evaluates the objective directly from the graph adjacency.
// Accuracy is limited by the grid spacing 2*sqrt(E0)/(grid_points-1); use an
// odd grid_points so the all-zero interior point is on the grid.
OracleResult brute_force_oracle(const PairProblem& prob, int grid_points);

}  // namespace kursync
