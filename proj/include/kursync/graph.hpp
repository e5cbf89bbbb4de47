#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kursync/types.hpp"

namespace kursync {

// Undirected simple connected graph on oscillators 1..n.  Node identifiers are
// 1-indexed everywhere they cross an interface (edge lists, error messages,
// reports); adjacency lists and distance matrices are stored 0-indexed for
// direct use against Eigen vectors.
//
// The node count is capped at 64: the toolkit targets dense certification
// (eigensolves, all-pairs optimization) whose cost grows too fast past that.
class Graph {
 public:
  static constexpr int kMaxNodes = 64;

  // Validates and normalizes: node count in [2, 64], endpoints in range, no
  // self-loops, no duplicate edges, and the graph must be connected
  // (disconnected graphs have no complement-distance constant L).
  Graph(int node_count, std::vector<std::pair<int, int>> edges);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // Normalized edge list: 1-indexed, u < v, sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // adjacency()[i] lists the 0-indexed neighbors of node i+1, ascending.
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }

  const std::vector<int>& degrees() const { return degrees_; }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }

  bool has_edge(int u, int v) const;  // 1-indexed endpoints
  bool is_complete() const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> neighbor_mask_;  // bit j of mask_[i]: edge i<->j
  std::vector<int> degrees_;
  int min_degree_ = 0;
  int max_degree_ = 0;
};

enum class Topology { chain, ring, star_tree };

std::string topology_name(Topology t);
Topology topology_from_name(const std::string& name);

// Validating constructor wrapper; edge endpoints are 1-indexed.
Graph build_graph(int node_count,
                  const std::vector<std::pair<int, int>>& edges);

// Named families used by the comparison experiments:
//   chain      1-2-3-...-n
//   ring       chain plus the closing edge (n, 1); needs n >= 3
//   star_tree  hub node 1 adjacent to every other node
Graph make_topology(Topology kind, int n);

// Hop-count distances via BFS; entry (i, j) is the distance between nodes
// i+1 and j+1.
IntMatrix all_pairs_distances(const Graph& g);

// L = 1 / (1 + sum of hop distances over all complement (non-adjacent)
// pairs).  Equals 1 exactly when the graph is complete.
Real connectivity_L(const Graph& g);

// Coarser variant: L* = 1 / (1 + diameter * number of complement pairs).
Real connectivity_Lstar(const Graph& g);

// Second-smallest eigenvalue of the combinatorial Laplacian.
Real algebraic_connectivity(const Graph& g);

// sqrt(sum over all unordered node pairs of (x_i - x_j)^2); equals the norm
// of the complete graph's incidence-transposed x and is shift-invariant.
Real pairwise_difference_norm(const VectorRef& x);

struct GraphConstants {
  Real L = 0;
  Real Lstar = 0;
  Real lambda2 = 0;
  int min_degree = 0;
  int diameter = 0;
  IntMatrix dist;  // same indexing as all_pairs_distances
};

GraphConstants graph_constants(const Graph& g);

}  // namespace kursync
