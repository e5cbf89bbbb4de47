#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "kursync/graph.hpp"
#include "kursync/rng.hpp"
#include "kursync/state.hpp"

namespace kursync::testsupport {

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  }
  return build_graph(n, edges);
}

// Random connected graph: a random spanning tree over shuffled labels plus
// independent extra edges.
inline Graph random_connected_graph(int n, SplitMix64& rng,
                                    Real extra_edge_prob = 0.3) {
  std::vector<int> label(static_cast<size_t>(n));
  std::iota(label.begin(), label.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
    std::swap(label[static_cast<size_t>(i)], label[static_cast<size_t>(j)]);
  }

  std::vector<std::vector<char>> present(
      static_cast<size_t>(n + 1), std::vector<char>(static_cast<size_t>(n + 1), 0));
  std::vector<std::pair<int, int>> edges;
  const auto add_edge = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    if (present[static_cast<size_t>(u)][static_cast<size_t>(v)]) return;
    present[static_cast<size_t>(u)][static_cast<size_t>(v)] = 1;
    edges.emplace_back(u, v);
  };

  for (int i = 1; i < n; ++i) {
    const int parent = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i));
    add_edge(label[static_cast<size_t>(parent)], label[static_cast<size_t>(i)]);
  }
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (rng.next_open01() < extra_edge_prob) add_edge(u, v);
    }
  }
  return build_graph(n, edges);
}

inline PhaseVector random_centered_phases(int n, SplitMix64& rng,
                                          Real scale = 1.0) {
  Vector raw(n);
  for (int i = 0; i < n; ++i) raw(i) = rng.uniform(-scale, scale);
  return center_phases(raw);
}

// Phases with a designed spread D0 and energy comfortably inside (D0^2/2,
// (3/4) D0^2): two oscillators pinned at the spread extremes, the rest close
// to the midpoint.  Used by the end-to-end certification tests, which need
// instances satisfying the containment hypotheses by construction.
inline PhaseVector tight_spread_phases(int n, Real d0, SplitMix64& rng) {
  const int m = n - 2;
  const Real amplitude =
      std::min(d0 / 2, d0 * std::sqrt(0.18 / std::max(1, m)));
  Vector raw(n);
  raw(0) = d0 / 2;
  raw(1) = -d0 / 2;
  for (int i = 2; i < n; ++i) raw(i) = rng.uniform(-amplitude, amplitude);
  // Random node relabeling so the extremes are not always oscillators 1, 2.
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
    std::swap(raw(i), raw(j));
  }
  return center_phases(raw);
}

}  // namespace kursync::testsupport
