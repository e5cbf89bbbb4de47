#include "kursync/graph.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace kursync {

namespace {

std::string node_range_message(int node, int n) {
  return "node id " + std::to_string(node) + " outside 1.." + std::to_string(n);
}

}  // namespace

Graph::Graph(int node_count, std::vector<std::pair<int, int>> edges) {
  if (node_count < 2) {
    throw std::invalid_argument("graph needs at least 2 nodes, got " +
                                std::to_string(node_count));
  }
  if (node_count > kMaxNodes) {
    throw std::invalid_argument("graph exceeds the supported " +
                                std::to_string(kMaxNodes) + "-node limit: " +
                                std::to_string(node_count));
  }
  n_ = node_count;
  neighbor_mask_.assign(static_cast<size_t>(n_), 0);

  for (auto& [u, v] : edges) {
    if (u < 1 || u > n_) throw std::invalid_argument(node_range_message(u, n_));
    if (v < 1 || v > n_) throw std::invalid_argument(node_range_message(v, n_));
    if (u == v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
    const std::uint64_t bit = 1ULL << (v - 1);
    if (neighbor_mask_[static_cast<size_t>(u - 1)] & bit) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ")");
    }
    neighbor_mask_[static_cast<size_t>(u - 1)] |= bit;
    neighbor_mask_[static_cast<size_t>(v - 1)] |= 1ULL << (u - 1);
  }

  std::sort(edges.begin(), edges.end());
  edges_ = std::move(edges);

  adj_.assign(static_cast<size_t>(n_), {});
  for (const auto& [u, v] : edges_) {
    adj_[static_cast<size_t>(u - 1)].push_back(v - 1);
    adj_[static_cast<size_t>(v - 1)].push_back(u - 1);
  }
  degrees_.resize(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    auto& nbrs = adj_[static_cast<size_t>(i)];
    std::sort(nbrs.begin(), nbrs.end());
    degrees_[static_cast<size_t>(i)] = static_cast<int>(nbrs.size());
  }
  min_degree_ = *std::min_element(degrees_.begin(), degrees_.end());
  max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());

  // Connectivity check: every downstream constant divides by L or lambda2,
  // both of which are undefined/zero on a disconnected graph.
  std::vector<char> seen(static_cast<size_t>(n_), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj_[static_cast<size_t>(u)]) {
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  if (reached != n_) {
    throw std::invalid_argument("L undefined for disconnected graph");
  }
}

bool Graph::has_edge(int u, int v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_ || u == v) return false;
  return (neighbor_mask_[static_cast<size_t>(u - 1)] >> (v - 1)) & 1ULL;
}

bool Graph::is_complete() const {
  return edge_count() == n_ * (n_ - 1) / 2;
}

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::chain: return "chain";
    case Topology::ring: return "ring";
    case Topology::star_tree: return "star_tree";
  }
  throw std::logic_error("unknown topology");
}

Topology topology_from_name(const std::string& name) {
  if (name == "chain") return Topology::chain;
  if (name == "ring") return Topology::ring;
  if (name == "star_tree") return Topology::star_tree;
  throw std::invalid_argument("unknown topology '" + name +
                              "' (expected chain, ring, or star_tree)");
}

Graph build_graph(int node_count,
                  const std::vector<std::pair<int, int>>& edges) {
  return Graph(node_count, edges);
}

Graph make_topology(Topology kind, int n) {
  const int min_n = (kind == Topology::ring) ? 3 : 2;
  if (n < min_n) {
    throw std::invalid_argument(topology_name(kind) + " needs at least " +
                                std::to_string(min_n) + " nodes, got " +
                                std::to_string(n));
  }
  std::vector<std::pair<int, int>> edges;
  switch (kind) {
    case Topology::chain:
    case Topology::ring:
      for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      if (kind == Topology::ring) edges.emplace_back(1, n);
      break;
    case Topology::star_tree:
      for (int i = 2; i <= n; ++i) edges.emplace_back(1, i);
      break;
  }
  return Graph(n, edges);
}

IntMatrix all_pairs_distances(const Graph& g) {
  const int n = g.node_count();
  IntMatrix dist(n, n);
  dist.setConstant(-1);
  const auto& adj = g.adjacency();
  for (int s = 0; s < n; ++s) {
    dist(s, s) = 0;
    std::queue<int> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : adj[static_cast<size_t>(u)]) {
        if (dist(s, v) < 0) {
          dist(s, v) = dist(s, u) + 1;
          frontier.push(v);
        }
      }
    }
  }
  return dist;
}

Real connectivity_L(const Graph& g) {
  const IntMatrix dist = all_pairs_distances(g);
  const int n = g.node_count();
  long long complement_sum = 0;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (!g.has_edge(u, v)) complement_sum += dist(u - 1, v - 1);
    }
  }
  return 1.0 / (1.0 + static_cast<Real>(complement_sum));
}

Real connectivity_Lstar(const Graph& g) {
  const IntMatrix dist = all_pairs_distances(g);
  const int n = g.node_count();
  const long long diameter = dist.maxCoeff();
  const long long complement_pairs =
      static_cast<long long>(n) * (n - 1) / 2 - g.edge_count();
  return 1.0 / (1.0 + static_cast<Real>(diameter * complement_pairs));
}

Real algebraic_connectivity(const Graph& g) {
  const int n = g.node_count();
  Matrix laplacian = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    laplacian(i, i) = static_cast<Real>(g.degrees()[static_cast<size_t>(i)]);
  }
  for (const auto& [u, v] : g.edges()) {
    laplacian(u - 1, v - 1) = -1.0;
    laplacian(v - 1, u - 1) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(laplacian,
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Laplacian eigensolve failed");
  }
  return solver.eigenvalues()(1);  // ascending order; index 0 is ~0
}

Real pairwise_difference_norm(const VectorRef& x) {
  const Eigen::Index n = x.size();
  if (n < 2) {
    throw std::invalid_argument("pairwise_difference_norm needs length >= 2");
  }
  Real sum = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Real d = x(i) - x(j);
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

GraphConstants graph_constants(const Graph& g) {
  GraphConstants c;
  c.dist = all_pairs_distances(g);
  c.diameter = c.dist.maxCoeff();
  c.min_degree = g.min_degree();
  c.lambda2 = algebraic_connectivity(g);

  const int n = g.node_count();
  long long complement_sum = 0;
  long long complement_pairs = 0;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (!g.has_edge(u, v)) {
        complement_sum += c.dist(u - 1, v - 1);
        ++complement_pairs;
      }
    }
  }
  c.L = 1.0 / (1.0 + static_cast<Real>(complement_sum));
  c.Lstar = 1.0 / (1.0 + static_cast<Real>(c.diameter) *
                             static_cast<Real>(complement_pairs));
  return c;
}

}  // namespace kursync
