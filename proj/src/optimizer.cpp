#include "kursync/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kursync/rng.hpp"

namespace kursync {

namespace {

constexpr Real kPi = std::numbers::pi;

void validate_pair_problem(const PairProblem& prob) {
  if (prob.graph == nullptr) {
    throw std::invalid_argument("pair problem has no graph");
  }
  const int n = prob.graph->node_count();
  if (prob.hi < 1 || prob.hi > n || prob.lo < 1 || prob.lo > n) {
    throw std::invalid_argument("pair node id outside 1..n");
  }
  if (prob.hi == prob.lo) {
    throw std::invalid_argument("pair must use two distinct oscillators");
  }
  if (!(prob.D > 0) || !(prob.D < kPi)) {
    throw std::invalid_argument("pair problem needs 0 < D < pi");
  }
  if (!(prob.E0 >= 0) || !(prob.E0 < prob.D * prob.D)) {
    throw std::invalid_argument("pair problem needs E0 < D^2");
  }
}

// Reduced coordinates.  With S the sum of the m = n-2 interior phases x, the
// two equality constraints force phi_hi = (D-S)/2 and phi_lo = -(D+S)/2.  In
// the shifted variables y = x + (S/2) 1 (bijective: x = y - (sum y/(m+2)) 1)
// the problem becomes
//   minimize  sum_{i in Nhi} sin(D/2 - y_i) + sum_{j in Nlo} sin(D/2 + y_j)
//   subject to |y_i| <= D/2  and  ||y||^2 - (sum y)^2/(m+2) <= E0 - D^2/2,
// i.e. a fixed box, a centered ellipsoid, and a fully separable objective.
struct ReducedPair {
  int m = 0;
  Real D = 0;
  Real budget = 0;  // E0 - D^2/2: the energy left after placing the pair
  std::vector<int> interior;      // 0-indexed node of each reduced variable
  std::vector<char> next_to_hi;   // reduced variable adjacent to `hi`?
  std::vector<char> next_to_lo;
  Real edge_const = 0;            // 2 sin D when (hi, lo) is an edge

  Real objective(const Vector& y) const {
    Real f = edge_const;
    for (int i = 0; i < m; ++i) {
      if (next_to_hi[static_cast<size_t>(i)]) f += std::sin(D / 2 - y(i));
      if (next_to_lo[static_cast<size_t>(i)]) f += std::sin(D / 2 + y(i));
    }
    return f;
  }

  void gradient(const Vector& y, Vector& g) const {
    for (int i = 0; i < m; ++i) {
      Real gi = 0;
      if (next_to_hi[static_cast<size_t>(i)]) gi -= std::cos(D / 2 - y(i));
      if (next_to_lo[static_cast<size_t>(i)]) gi += std::cos(D / 2 + y(i));
      g(i) = gi;
    }
  }

  Real ellipsoid_norm2(const Vector& y) const {
    const Real sy = y.sum();
    return y.squaredNorm() - sy * sy / static_cast<Real>(m + 2);
  }

  // Feasible-set projection: clamping is exact for the box, and radial
  // scaling onto the ellipsoid preserves box feasibility (it shrinks every
  // coordinate toward 0).
  void project(Vector& y) const {
    y = y.cwiseMax(-D / 2).cwiseMin(D / 2);
    const Real q = ellipsoid_norm2(y);
    if (q > budget) {
      if (budget <= 0) {
        y.setZero();
      } else {
        y *= std::sqrt(budget / q);
      }
    }
  }

  // Back out the full 1-indexed-order phase vector from reduced coordinates.
  Vector full_phases(const Vector& y, int hi, int lo, int n) const {
    Vector x = y.array() - y.sum() / static_cast<Real>(m + 2);
    const Real s = x.sum();
    Vector phi(n);
    phi(hi - 1) = (D - s) / 2;
    phi(lo - 1) = -(D + s) / 2;
    for (int i = 0; i < m; ++i) {
      phi(interior[static_cast<size_t>(i)]) = x(i);
    }
    return phi;
  }
};

ReducedPair make_reduced(const PairProblem& prob) {
  const Graph& g = *prob.graph;
  const int n = g.node_count();
  ReducedPair red;
  red.m = n - 2;
  red.D = prob.D;
  red.budget = prob.E0 - prob.D * prob.D / 2;
  red.edge_const = g.has_edge(prob.hi, prob.lo) ? 2 * std::sin(prob.D) : 0;
  red.interior.reserve(static_cast<size_t>(red.m));
  for (int node = 0; node < n; ++node) {
    if (node != prob.hi - 1 && node != prob.lo - 1) {
      red.interior.push_back(node);
    }
  }
  red.next_to_hi.resize(static_cast<size_t>(red.m));
  red.next_to_lo.resize(static_cast<size_t>(red.m));
  for (int i = 0; i < red.m; ++i) {
    const int node = red.interior[static_cast<size_t>(i)] + 1;
    red.next_to_hi[static_cast<size_t>(i)] = g.has_edge(prob.hi, node);
    red.next_to_lo[static_cast<size_t>(i)] = g.has_edge(prob.lo, node);
  }
  return red;
}

// Projected gradient with backtracking (Armijo-style sufficient decrease on
// the projected step).  Returns the reached objective value; y is updated in
// place.
Real run_projected_gradient(const ReducedPair& red, const SolverOptions& opts,
                            Vector& y) {
  red.project(y);
  Real fy = red.objective(y);
  Vector grad(red.m), trial(red.m), delta(red.m);
  Real step = 1.0;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    red.gradient(y, grad);
    bool accepted = false;
    Real f_trial = fy;
    while (step >= 1e-16) {
      trial = y - step * grad;
      red.project(trial);
      delta = trial - y;
      f_trial = red.objective(trial);
      if (f_trial <= fy - 1e-4 * delta.squaredNorm() / step) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // projected gradient vanishes: stationary

    const Real decrease = fy - f_trial;
    const Real moved = delta.lpNorm<Eigen::Infinity>();
    y = trial;
    fy = f_trial;
    step = std::min(step * 2, 1e6);
    if (decrease < opts.objective_tol && moved < opts.step_tol) break;
  }
  return fy;
}

void check_argmin_feasibility(const PairProblem& prob, const Vector& phi) {
  const Real tol = 1e-8;
  const Real hi_phase = phi(prob.hi - 1);
  const Real lo_phase = phi(prob.lo - 1);
  const bool gap_ok = std::abs(hi_phase - lo_phase - prob.D) <= tol;
  const bool sum_ok = std::abs(phi.sum()) <= tol;
  const bool energy_ok = phi.squaredNorm() <= prob.E0 + tol;
  bool box_ok = true;
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    if (phi(i) < lo_phase - tol || phi(i) > hi_phase + tol) box_ok = false;
  }
  if (!(gap_ok && sum_ok && energy_ok && box_ok)) {
    throw std::runtime_error("pair optimizer produced an infeasible argmin");
  }
}

}  // namespace

PairBoundResult minimize_pair(const PairProblem& prob, std::uint64_t seed,
                              const SolverOptions& opts) {
  validate_pair_problem(prob);
  const Graph& g = *prob.graph;
  const int n = g.node_count();

  PairBoundResult result;
  result.hi = prob.hi;
  result.lo = prob.lo;

  const Real budget = prob.E0 - prob.D * prob.D / 2;
  if (budget < 0) {
    // Placing the pair D apart already costs D^2/2 of energy: the
    // configuration is unreachable and imposes no coupling constraint.
    result.status = PairStatus::infeasible;
    return result;
  }

  const ReducedPair red = make_reduced(prob);
  const Real boundary_tol = 1e-8 * (1 + prob.E0);

  if (red.m == 0) {
    // n = 2: the constraints pin phi = (D/2, -D/2) and the objective is the
    // doubled edge term.
    Vector y(0);
    result.min_denominator = red.objective(y);
    result.argmin = red.full_phases(y, prob.hi, prob.lo, n);
    result.starts_used = 1;
    result.status = (budget <= boundary_tol) ? PairStatus::boundary
                                             : PairStatus::converged;
    check_argmin_feasibility(prob, result.argmin);
    return result;
  }

  SplitMix64 rng(seed);
  Real best_value = std::numeric_limits<Real>::infinity();
  Vector best_y;

  const auto try_start = [&](Vector y) {
    const Real value = run_projected_gradient(red, opts, y);
    if (value < best_value) {
      best_value = value;
      best_y = y;
    }
  };

  // Deterministic starts: the box center, and the corner where every interior
  // oscillator sits at the minimum phase.
  try_start(Vector::Zero(red.m));
  try_start(Vector::Constant(red.m, -prob.D / 2));
  for (int s = 0; s < opts.random_starts; ++s) {
    Vector y(red.m);
    for (int i = 0; i < red.m; ++i) {
      y(i) = rng.uniform(-prob.D / 2, prob.D / 2);
    }
    try_start(std::move(y));
  }
  result.starts_used = 2 + opts.random_starts;

  result.min_denominator = best_value;
  result.argmin = red.full_phases(best_y, prob.hi, prob.lo, n);
  result.status = (red.budget - red.ellipsoid_norm2(best_y) <= boundary_tol)
                      ? PairStatus::boundary
                      : PairStatus::converged;
  check_argmin_feasibility(prob, result.argmin);
  return result;
}

KStarResult k_star(const Graph& g, const FrequencyVector& f, Real E0, Real D,
                   std::uint64_t seed, const SolverOptions& opts) {
  if (f.dev.size() != g.node_count()) {
    throw std::invalid_argument("k_star: dimension mismatch");
  }
  if (!(D > 0) || !strictly_less(D, kPi)) {
    throw std::invalid_argument("k_star needs 0 < D < pi");
  }
  if (!(E0 >= 0) || !strictly_less(E0, D * D)) {
    throw std::invalid_argument("k_star needs E0 < D^2");
  }

  const int n = g.node_count();
  KStarResult out;
  out.pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);

  for (int hi = 1; hi <= n; ++hi) {
    for (int lo = hi + 1; lo <= n; ++lo) {
      PairProblem prob{hi, lo, D, E0, &g};
      PairBoundResult res = minimize_pair(
          prob,
          derive_seed(seed, {static_cast<std::uint64_t>(hi),
                             static_cast<std::uint64_t>(lo)}),
          opts);
      if (res.status != PairStatus::infeasible) {
        if (!(res.min_denominator > 0)) {
          throw std::runtime_error(
              "pair optimizer returned a nonpositive denominator for pair (" +
              std::to_string(hi) + ", " + std::to_string(lo) + ")");
        }
        const Real numerator =
            static_cast<Real>(n) * std::abs(f.dev(hi - 1) - f.dev(lo - 1));
        res.coupling_bound = numerator / res.min_denominator;
        if (res.coupling_bound > out.value) {
          out.value = res.coupling_bound;
          out.hi = hi;
          out.lo = lo;
        }
      }
      out.pairs.push_back(std::move(res));
    }
  }
  return out;
}

KStarResult k_star(const Graph& g, const FrequencyVector& f,
                   const PhaseVector& phi0, Real D, std::uint64_t seed,
                   const SolverOptions& opts) {
  if (!phi0.centered) {
    throw std::invalid_argument("k_star requires centered initial phases");
  }
  const Real d0 = phi0.phi.maxCoeff() - phi0.phi.minCoeff();
  if (d0 > D + kStrictSlack) {
    throw std::invalid_argument("k_star needs D >= initial spread D0");
  }
  return k_star(g, f, energy(phi0), D, seed, opts);
}

OracleResult brute_force_oracle(const PairProblem& prob, int grid_points) {
  validate_pair_problem(prob);
  const Graph& g = *prob.graph;
  const int n = g.node_count();
  if (n > 5) {
    throw std::invalid_argument(
        "brute_force_oracle supports n <= 5 (cost grows as grid^(n-2))");
  }
  if (grid_points < 2) {
    throw std::invalid_argument("brute_force_oracle needs >= 2 grid points");
  }

  if (prob.E0 - prob.D * prob.D / 2 < 0) {
    return {0, false};
  }

  // Independent objective evaluation straight from the adjacency lists (no
  // shared code with the reduced-form solver).
  const auto objective_at = [&](const Vector& phi) {
    Real f = 0;
    for (int v : g.adjacency()[static_cast<size_t>(prob.hi - 1)]) {
      f += std::sin(phi(prob.hi - 1) - phi(v));
    }
    for (int v : g.adjacency()[static_cast<size_t>(prob.lo - 1)]) {
      f += std::sin(phi(v) - phi(prob.lo - 1));
    }
    return f;
  };

  const int m = n - 2;
  std::vector<int> interior;
  for (int node = 0; node < n; ++node) {
    if (node != prob.hi - 1 && node != prob.lo - 1) interior.push_back(node);
  }

  Vector phi(n);
  if (m == 0) {
    phi(prob.hi - 1) = prob.D / 2;
    phi(prob.lo - 1) = -prob.D / 2;
    return {objective_at(phi), true};
  }

  const Real reach = std::sqrt(prob.E0);  // any feasible phase obeys |phi|<=it
  std::vector<Real> pts(static_cast<size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    pts[static_cast<size_t>(i)] =
        -reach + 2 * reach * static_cast<Real>(i) /
                     static_cast<Real>(grid_points - 1);
  }

  const Real tol = 1e-12;
  Real best = std::numeric_limits<Real>::infinity();
  std::vector<int> idx(static_cast<size_t>(m), 0);
  while (true) {
    Real s = 0;
    for (int i = 0; i < m; ++i) s += pts[static_cast<size_t>(idx[static_cast<size_t>(i)])];
    const Real hi_phase = (prob.D - s) / 2;
    const Real lo_phase = -(prob.D + s) / 2;

    bool feasible = true;
    Real sq = 0;
    for (int i = 0; i < m && feasible; ++i) {
      const Real x = pts[static_cast<size_t>(idx[static_cast<size_t>(i)])];
      if (x < lo_phase - tol || x > hi_phase + tol) feasible = false;
      sq += x * x;
    }
    if (feasible &&
        hi_phase * hi_phase + lo_phase * lo_phase + sq <= prob.E0 + tol) {
      phi(prob.hi - 1) = hi_phase;
      phi(prob.lo - 1) = lo_phase;
      for (int i = 0; i < m; ++i) {
        phi(interior[static_cast<size_t>(i)]) =
            pts[static_cast<size_t>(idx[static_cast<size_t>(i)])];
      }
      best = std::min(best, objective_at(phi));
    }

    int carry = m - 1;
    while (carry >= 0 && ++idx[static_cast<size_t>(carry)] == grid_points) {
      idx[static_cast<size_t>(carry)] = 0;
      --carry;
    }
    if (carry < 0) break;
  }

  if (!std::isfinite(best)) return {0, false};
  return {best, true};
}

}  // namespace kursync
