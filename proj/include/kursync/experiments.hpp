#pragma once

#include <cstdint>
#include <vector>

#include "kursync/graph.hpp"
#include "kursync/rng.hpp"
#include "kursync/state.hpp"
#include "kursync/types.hpp"

namespace kursync {

struct ExperimentConfig {
  std::uint64_t seed = 7;
  int samples = 0;            // per cell; each experiment has its own default
  std::vector<int> n_range;   // oscillator counts, one cell per entry
  std::vector<Topology> topologies;  // comparison experiment only
  Real freq_low = 0;          // rad/s
  Real freq_high = 1;
  int threads = 1;            // worker count; results are thread-invariant
};

// n i.i.d. uniform draws on (0, pi), mean-subtracted; the spread is below pi
// by construction.
PhaseVector sample_phases(int n, SplitMix64& rng);

// n i.i.d. uniform draws on (low, high), in deviation form.
FrequencyVector sample_frequencies(int n, Real low, Real high,
                                   SplitMix64& rng);

// Fractions of random initial-phase samples admitted by each of the three
// phase constraints (ours evaluated at D = D0), per oscillator count.
struct FeasibilityRow {
  int n = 0;
  Real frac_ours = 0;
  Real frac_ref3 = 0;
  Real frac_ref5 = 0;
};

std::vector<FeasibilityRow> experiment1(const ExperimentConfig& cfg);

// Bound comparison per (topology, n) cell over samples passing all three
// phase constraints: means of each bound and the fraction of samples where
// our bound is strictly smaller (ties do not count as outperformance).
struct ComparisonRow {
  Topology topology = Topology::chain;
  int n = 0;
  int feasible_count = 0;
  Real mean_ours = 0;  // NaN when feasible_count == 0
  Real mean_ref3 = 0;
  Real mean_ref5 = 0;
  Real frac_beat_ref3 = 0;
  Real frac_beat_ref5 = 0;
};

std::vector<ComparisonRow> experiment2(const ExperimentConfig& cfg);

// Stream identifiers keeping every sample reproducible independently of
// scheduling: one child stream per (seed, experiment/topology, n, index).
std::uint64_t sample_stream(std::uint64_t seed, std::uint64_t topic, int n,
                            int index);

// Topic words for sample_stream: experiment1 uses 0; experiment2 uses the
// topology's id.
std::uint64_t topology_stream_id(Topology t);

}  // namespace kursync
