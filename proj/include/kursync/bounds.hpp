#pragma once

#include <optional>
#include <string>

#include "kursync/graph.hpp"
#include "kursync/state.hpp"
#include "kursync/types.hpp"

namespace kursync {

// Coupling bound from the energy-decay argument:
//   K >= sigma * D / (sqrt(E0) * L * sin D).
// Any coupling at or above this keeps the phase energy bounded by E0.
// Requires 0 < D < pi, L in (0, 1], E0 > 0 (all phases equal is degenerate).
Real k_bound_energy(Real sigma, Real D, Real E0, Real L);

struct AnalyticBound {
  Real value = 0;
  bool feasible = false;    // hypotheses D <= pi/2 and E0 < (3/4) D^2 hold
  bool energy_only = false; // E0 < D^2 / 2: the spread can never reach D, so
                            // only the energy bound is required (value 0)
};

// Closed-form spread-containment bound
//   K >= n * max_{i,j} |dev_i - dev_j| / (2 * min_degree * sin(D/2 -
//        sqrt(E0 - D^2/2)))
// valid under D <= pi/2 and E0 < (3/4) D^2; infeasible marker otherwise.
AnalyticBound k_bound_analytic(int n, int min_degree, const VectorRef& dev,
                               Real D, Real E0);

struct RefBound {
  Real value = 0;
  bool feasible = false;
};

// Comparison bound "ref3" (Laplacian-connectivity criterion):
//   gamma_max = max(pi/2, ||pairwise differences of phi0||_2)
//   K = 2 n ||pairwise differences of w||_2 / (lambda2 * pi * sinc(gamma_max))
// with sinc(x) = sin(x)/x, feasible iff the phase term stays below pi.
RefBound k_bound_ref3(int n, const VectorRef& w, Real lambda2,
                      const PhaseVector& phi0);

// Comparison bound "ref5" (complement-pair-connectivity criterion):
//   D_c = max(pi/2, sqrt(2 E0)),  K = sqrt(2) * sigma / (Lstar * sin D_c)
// feasible iff D_c < pi, i.e. E0 < pi^2/2 (the smallest admissible spread
// ceiling covering the initial energy must exist below pi).
RefBound k_bound_ref5(Real sigma, Real E0, Real Lstar);

struct PhaseFlags {
  bool ours = false;  // E0 < D^2 (and D < pi)
  bool ref3 = false;  // ||pairwise differences of phi0||_2 < pi
  bool ref5 = false;  // E0 < pi^2/2
};

// Initial-phase admissibility under the three criteria, evaluated at the
// spread ceiling D (callers reproducing the comparison protocol pass D = D0).
PhaseFlags phase_constraint_flags(const PhaseVector& phi0, Real D);

struct SyncCertificate {
  Real D = 0;   // chosen spread ceiling (defaults to D0)
  Real D0 = 0;  // initial spread
  Real E0 = 0;  // initial energy

  Real k_energy = 0;          // NaN when no admissible D exists (D >= pi)
  AnalyticBound k_analytic;
  std::optional<Real> k_star;  // optimizer refinement, when it ran
  RefBound k_ref3;
  RefBound k_ref5;

  PhaseFlags flags;       // constraint admissibility at this certificate's D
  bool d_in_range = false;    // D0 <= D <= pi/2
  bool th1_energy = false;    // E0 < (3/4) D^2
  bool energy_only = false;   // E0 < D^2 / 2
  bool th2_energy = false;    // E0 < D^2

  std::optional<Real> k_ours;  // final certified bound; absent when no
                               // criterion applies
  std::string winner;  // trivial | energy | analytic | optimization |
                       // infeasible
};

// Assembles every bound and flag for one instance.  `k_star` is the
// optimizer's refined bound when the caller ran it (the optimizer module
// depends on this one, so the value is injected rather than computed here);
// when present and its hypotheses hold it replaces the analytic bound in the
// final max.  Infeasibility is reported through flags, never thrown.
SyncCertificate certificate(const Graph& g, const FrequencyVector& f,
                            const PhaseVector& phi0,
                            std::optional<Real> D_choice = {},
                            std::optional<Real> k_star = {});

}  // namespace kursync
