#pragma once

#include <vector>

#include "kursync/graph.hpp"
#include "kursync/types.hpp"

namespace kursync {

// Oscillator phases in radians.  The analysis lives on the zero-sum
// hyperplane, so most consumers require `centered`; phases are never wrapped
// modulo 2*pi (trajectories are tracked in R^n, unwrapped).
struct PhaseVector {
  Vector phi;
  bool centered = false;
};

// Natural frequencies in rad/s stored in deviation form: w = wbar + dev with
// dev summing to zero.
struct FrequencyVector {
  Vector w;
  Real wbar = 0;
  Vector dev;
};

// Subtracts the mean so the result sums to zero; idempotent and preserves
// pairwise phase differences exactly.
PhaseVector center_phases(const VectorRef& raw);

// Splits raw frequencies into mean + zero-sum deviations.
FrequencyVector deviations(const VectorRef& w);

// E = sum of squared phases (squared Euclidean norm).
Real energy(const PhaseVector& p);

// sigma = Euclidean norm of the frequency deviations.
Real sigma_norm(const FrequencyVector& f);

struct SpreadInfo {
  Real spread = 0;          // phi_max - phi_min
  std::vector<int> argmax;  // 1-indexed oscillators within 1e-9 rad of the max
  std::vector<int> argmin;  // 1-indexed oscillators within 1e-9 rad of the min
};

// Spread D = phi_max - phi_min with all (near-)tied extremal oscillators
// reported; the 1e-9 tie tolerance captures states sitting numerically on the
// containment boundary where several oscillators share the extreme phase.
SpreadInfo max_phase_spread(const PhaseVector& p);

struct EdgeEnergySandwich {
  Real lower = 0;     // L * n * E
  Real edge_sum = 0;  // sum over edges of (phi_i - phi_j)^2
  Real upper = 0;     // n * E
};

// Evaluates the two-sided bound L*n*E <= sum_E (phi_i - phi_j)^2 <= n*E that
// links the phase energy to edge-wise differences; requires centered phases
// (the upper identity only holds on the zero-sum hyperplane).
EdgeEnergySandwich edge_energy_sandwich(const Graph& g, const PhaseVector& p);

}  // namespace kursync
