#include "kursync/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kursync {

namespace {

void check_dimensions(const Graph& g, const FrequencyVector& f,
                      const Vector& phi) {
  if (f.dev.size() != g.node_count() || phi.size() != g.node_count()) {
    throw std::invalid_argument(
        "dimension mismatch: graph has " + std::to_string(g.node_count()) +
        " nodes, frequencies " + std::to_string(f.dev.size()) +
        ", phases " + std::to_string(phi.size()));
  }
}

void check_coupling(Real coupling) {
  if (!(coupling >= 0)) {
    throw std::invalid_argument("coupling must be nonnegative, got " +
                                std::to_string(coupling));
  }
}

// Shared kernel: out = dev + (K/n) * coupling terms, one sin per edge.
void rhs_into(const Graph& g, const Vector& dev, Real coupling,
              const Vector& phi, Vector& out) {
  out = dev;
  const Real scale = coupling / static_cast<Real>(g.node_count());
  for (const auto& [u, v] : g.edges()) {
    const Real s = scale * std::sin(phi(v - 1) - phi(u - 1));
    out(u - 1) += s;
    out(v - 1) -= s;
  }
}

}  // namespace

Real default_step(const Graph& g, Real coupling) {
  const Real stiffness =
      coupling * static_cast<Real>(g.max_degree()) /
      static_cast<Real>(g.node_count());
  return std::min(0.01, 0.1 / std::max(1.0, stiffness));
}

Real default_horizon(const FrequencyVector& f) {
  return 200.0 / std::max(sigma_norm(f), 0.1);
}

SimConfig default_sim_config(const Graph& g, const FrequencyVector& f,
                             Real coupling) {
  SimConfig cfg;
  cfg.step = default_step(g, coupling);
  cfg.horizon = default_horizon(f);
  return cfg;
}

Vector kuramoto_rhs(const Graph& g, const FrequencyVector& f, Real coupling,
                    const PhaseVector& p) {
  check_dimensions(g, f, p.phi);
  check_coupling(coupling);
  Vector out(g.node_count());
  rhs_into(g, f.dev, coupling, p.phi, out);
  return out;
}

Trajectory integrate(const Graph& g, const FrequencyVector& f, Real coupling,
                     const PhaseVector& p0, const SimConfig& cfg) {
  check_dimensions(g, f, p0.phi);
  check_coupling(coupling);
  if (!(cfg.step > 0)) {
    throw std::invalid_argument("step must be positive");
  }
  if (!(cfg.horizon >= cfg.step)) {
    throw std::invalid_argument("horizon must be at least one step");
  }
  if (cfg.record_every < 1) {
    throw std::invalid_argument("record_every must be at least 1");
  }

  const int n = g.node_count();
  const Real inv_n = 1.0 / static_cast<Real>(n);
  Vector phi = p0.phi;
  if (cfg.recenter) phi.array() -= phi.mean();

  Vector k1(n), k2(n), k3(n), k4(n), scratch(n);
  Trajectory traj;

  const auto record = [&](Real t) {
    rhs_into(g, f.dev, coupling, phi, k1);
    traj.times.push_back(t);
    traj.states.push_back(phi);
    traj.spread.push_back(phi.maxCoeff() - phi.minCoeff());
    traj.energy.push_back(phi.squaredNorm());
    PhaseVector snapshot{phi, true};
    traj.lyapunov.push_back(lyapunov_value(g, f, coupling, snapshot));
    traj.residual.push_back(k1.lpNorm<Eigen::Infinity>());
    return traj.residual.back();
  };

  Real res = record(0.0);
  if (cfg.stop_on_sync && res < cfg.sync_tol) return traj;

  const long long total_steps =
      static_cast<long long>(std::ceil(cfg.horizon / cfg.step - 1e-9));
  for (long long k = 1; k <= total_steps; ++k) {
    const Real t0 = static_cast<Real>(k - 1) * cfg.step;
    const Real t1 = std::min(static_cast<Real>(k) * cfg.step, cfg.horizon);
    const Real h = t1 - t0;

    rhs_into(g, f.dev, coupling, phi, k1);
    scratch = phi + (h / 2) * k1;
    rhs_into(g, f.dev, coupling, scratch, k2);
    scratch = phi + (h / 2) * k2;
    rhs_into(g, f.dev, coupling, scratch, k3);
    scratch = phi + h * k3;
    rhs_into(g, f.dev, coupling, scratch, k4);
    phi += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    if (cfg.recenter) phi.array() -= phi.sum() * inv_n;

    if (!phi.allFinite()) {
      throw std::runtime_error("simulation blow-up: non-finite state at t=" +
                               std::to_string(t1));
    }

    const bool last = (k == total_steps);
    if (k % cfg.record_every == 0 || last) {
      res = record(t1);
      if (cfg.stop_on_sync && res < cfg.sync_tol) break;
    }
  }
  return traj;
}

Real sync_residual(const Graph& g, const FrequencyVector& f, Real coupling,
                   const PhaseVector& p) {
  return kuramoto_rhs(g, f, coupling, p).lpNorm<Eigen::Infinity>();
}

Real lyapunov_value(const Graph& g, const FrequencyVector& f, Real coupling,
                    const PhaseVector& p) {
  check_dimensions(g, f, p.phi);
  Real cos_sum = 0;
  for (const auto& [u, v] : g.edges()) {
    cos_sum += std::cos(p.phi(u - 1) - p.phi(v - 1));
  }
  return -f.dev.dot(p.phi) -
         coupling / static_cast<Real>(g.node_count()) * cos_sum;
}

Real energy_decay_slack(const Graph& g, const FrequencyVector& f,
                        Real coupling, const PhaseVector& p, Real D) {
  check_dimensions(g, f, p.phi);
  check_coupling(coupling);
  if (!p.centered) {
    throw std::invalid_argument("energy_decay_slack requires centered phases");
  }
  const Real spread = p.phi.maxCoeff() - p.phi.minCoeff();
  if (!(spread <= D && D < std::numbers::pi) || !(D > 0)) {
    throw std::invalid_argument("inequality hypothesis violated: need D_t <= D < pi");
  }
  const Real e = p.phi.squaredNorm();
  const Real sigma = sigma_norm(f);
  const Real shrink = connectivity_L(g) * std::sin(D) / D;
  const Real bound = 2 * sigma * std::sqrt(e) - 2 * coupling * shrink * e;

  Vector vel(g.node_count());
  rhs_into(g, f.dev, coupling, p.phi, vel);
  const Real dedt = 2 * p.phi.dot(vel);
  return bound - dedt;
}

PisResult pis_check(const Trajectory& traj, Real D) {
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.spread[i] > D + 1e-9) {
      return {false, traj.times[i]};
    }
  }
  return {true, 0};
}

}  // namespace kursync
