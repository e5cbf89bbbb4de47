#pragma once

#include <cstddef>
#include <vector>

#include "kursync/graph.hpp"
#include "kursync/state.hpp"
#include "kursync/types.hpp"

namespace kursync {

struct SimConfig {
  Real step = 0.01;        // integrator step (s)
  Real horizon = 100.0;    // final time (s)
  Real sync_tol = 1e-8;    // residual threshold declaring synchronization
  int record_every = 1;    // sampling stride in steps
  bool recenter = true;    // project each state back onto the zero-sum plane
  bool stop_on_sync = false;  // end the run once the residual drops below
                              // sync_tol (the state is then stationary)
};

// Coupling-aware default step: stiffness scales with K * max_degree / n, so
// the step shrinks accordingly; determinism beats adaptive stepping for
// reproducible experiments.
Real default_step(const Graph& g, Real coupling);

// Weak heterogeneity relaxes slowly, so the default horizon scales inversely
// with the deviation norm; convergence is declared by residual, not horizon.
Real default_horizon(const FrequencyVector& f);

SimConfig default_sim_config(const Graph& g, const FrequencyVector& f,
                             Real coupling);

// Time-stamped states plus monitor channels recorded at the same instants.
struct Trajectory {
  std::vector<Real> times;
  std::vector<Vector> states;
  std::vector<Real> spread;    // D_t = phi_max - phi_min
  std::vector<Real> energy;    // E_t = sum phi_i^2
  std::vector<Real> lyapunov;  // potential V (non-increasing along the flow)
  std::vector<Real> residual;  // max_i |phi_dot_i|
  std::size_t size() const { return times.size(); }
};

// Phase velocities: phi_dot_i = dev_i + (K/n) * sum_{k in N_i} sin(phi_k -
// phi_i).  The output sums to zero (up to roundoff), so the zero-sum plane is
// invariant under the flow.
Vector kuramoto_rhs(const Graph& g, const FrequencyVector& f, Real coupling,
                    const PhaseVector& p);

// Classical fixed-step RK4.  Requires centered initial phases; records state
// and monitors every `record_every` steps (plus the initial and final
// instants) and throws if the state stops being finite (blow-up), reporting
// the offending time.
Trajectory integrate(const Graph& g, const FrequencyVector& f, Real coupling,
                     const PhaseVector& p0, const SimConfig& cfg);

// Infinity norm of the phase-velocity vector; a residual below sync_tol
// declares frequency synchronization.
Real sync_residual(const Graph& g, const FrequencyVector& f, Real coupling,
                   const PhaseVector& p);

// Potential V = -sum_k dev_k*phi_k - (K/n) * sum_{(i,j) in E} cos(phi_i -
// phi_j); its exact time derivative along the flow is -sum_i phi_dot_i^2.
Real lyapunov_value(const Graph& g, const FrequencyVector& f, Real coupling,
                    const PhaseVector& p);

// Slack of the energy-decay differential inequality
//   dE/dt <= 2*sigma*sqrt(E) - 2*K*L*(sin D / D)*E
// evaluated at one state with dE/dt = 2*phi.dot(phi_dot) computed exactly
// from the right-hand side.  Nonnegative whenever the spread stays within D.
// Requires centered phases and max_phase_spread(p) <= D < pi.
Real energy_decay_slack(const Graph& g, const FrequencyVector& f,
                        Real coupling, const PhaseVector& p, Real D);

struct PisResult {
  bool pass = true;
  Real first_violation_time = 0;  // meaningful only when !pass
};

// Containment check: the spread must stay within D (tolerance 1e-9) at every
// recorded instant.
PisResult pis_check(const Trajectory& traj, Real D);

}  // namespace kursync
