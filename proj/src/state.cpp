#include "kursync/state.hpp"

#include <cmath>
#include <stdexcept>

namespace kursync {

namespace {
constexpr Real kTieTolerance = 1e-9;  // radians
}

PhaseVector center_phases(const VectorRef& raw) {
  if (raw.size() < 2) {
    throw std::invalid_argument("center_phases needs length >= 2");
  }
  PhaseVector p;
  p.phi = raw.array() - raw.mean();
  p.centered = true;
  return p;
}

FrequencyVector deviations(const VectorRef& w) {
  if (w.size() < 2) {
    throw std::invalid_argument("deviations needs length >= 2");
  }
  FrequencyVector f;
  f.w = w;
  f.wbar = w.mean();
  f.dev = w.array() - f.wbar;
  return f;
}

Real energy(const PhaseVector& p) { return p.phi.squaredNorm(); }

Real sigma_norm(const FrequencyVector& f) { return f.dev.norm(); }

SpreadInfo max_phase_spread(const PhaseVector& p) {
  SpreadInfo info;
  if (p.phi.size() == 0) return info;
  const Real hi = p.phi.maxCoeff();
  const Real lo = p.phi.minCoeff();
  info.spread = hi - lo;
  for (Eigen::Index i = 0; i < p.phi.size(); ++i) {
    if (p.phi(i) >= hi - kTieTolerance) {
      info.argmax.push_back(static_cast<int>(i) + 1);
    }
    if (p.phi(i) <= lo + kTieTolerance) {
      info.argmin.push_back(static_cast<int>(i) + 1);
    }
  }
  return info;
}

EdgeEnergySandwich edge_energy_sandwich(const Graph& g, const PhaseVector& p) {
  if (!p.centered || std::abs(p.phi.sum()) >
                         1e-9 * static_cast<Real>(p.phi.size())) {
    throw std::invalid_argument("edge_energy_sandwich requires centered phases");
  }
  if (p.phi.size() != g.node_count()) {
    throw std::invalid_argument("phase vector length does not match graph");
  }
  EdgeEnergySandwich s;
  const Real e = energy(p);
  const Real n = static_cast<Real>(g.node_count());
  s.lower = connectivity_L(g) * n * e;
  s.upper = n * e;
  for (const auto& [u, v] : g.edges()) {
    const Real d = p.phi(u - 1) - p.phi(v - 1);
    s.edge_sum += d * d;
  }
  return s;
}

}  // namespace kursync
