#include "kursync/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kursync {

namespace {

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();
constexpr Real kPi = std::numbers::pi;

void check_connectivity_constant(Real L, const char* name) {
  if (!(L > 0) || L > 1) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
  }
}

// A deviation norm this small (relative to the mean frequency) is treated as
// exactly homogeneous: certification is then trivial with coupling 0.
bool is_homogeneous(Real sigma, Real wbar) {
  return sigma <= 1e-13 * (1.0 + std::abs(wbar));
}

}  // namespace

Real k_bound_energy(Real sigma, Real D, Real E0, Real L) {
  if (!(D > 0) || !(D < kPi)) {
    throw std::invalid_argument("spread ceiling D must lie in (0, pi)");
  }
  check_connectivity_constant(L, "L");
  if (!(E0 > 0)) {
    throw std::invalid_argument("all initial phases equal");
  }
  if (!(sigma >= 0)) {
    throw std::invalid_argument("sigma must be nonnegative");
  }
  return sigma * D / (std::sqrt(E0) * L * std::sin(D));
}

AnalyticBound k_bound_analytic(int n, int min_degree, const VectorRef& dev,
                               Real D, Real E0) {
  if (n < 2 || dev.size() != n) {
    throw std::invalid_argument("k_bound_analytic: bad node count");
  }
  if (min_degree < 1) {
    throw std::invalid_argument("k_bound_analytic: min_degree must be >= 1");
  }
  if (!(D > 0) || !(E0 >= 0)) {
    throw std::invalid_argument("k_bound_analytic: need D > 0 and E0 >= 0");
  }

  AnalyticBound b;
  b.energy_only = strictly_less(E0, D * D / 2);
  const bool d_ok = D <= kPi / 2 + kStrictSlack;
  const bool e_ok = strictly_less(E0, 0.75 * D * D);
  b.feasible = d_ok && e_ok;
  if (!b.feasible) {
    b.value = kNaN;
    return b;
  }
  if (b.energy_only) {
    // The spread can never climb from sqrt(2 E0) < D up to D, so no
    // containment coupling is required beyond the energy bound.
    b.value = 0;
    return b;
  }
  const Real max_gap = dev.maxCoeff() - dev.minCoeff();
  const Real arg = D / 2 - std::sqrt(std::max(0.0, E0 - D * D / 2));
  b.value = static_cast<Real>(n) * max_gap /
            (2.0 * static_cast<Real>(min_degree) * std::sin(arg));
  return b;
}

RefBound k_bound_ref3(int n, const VectorRef& w, Real lambda2,
                      const PhaseVector& phi0) {
  if (w.size() != n || phi0.phi.size() != n) {
    throw std::invalid_argument("k_bound_ref3: dimension mismatch");
  }
  if (!(lambda2 > 0)) {
    throw std::invalid_argument("k_bound_ref3: lambda2 must be positive");
  }
  RefBound b;
  const Real phase_norm = pairwise_difference_norm(phi0.phi);
  b.feasible = strictly_less(phase_norm, kPi);
  if (!b.feasible) {
    b.value = kNaN;
    return b;
  }
  const Real gamma_max = std::max(kPi / 2, phase_norm);
  const Real sinc = std::sin(gamma_max) / gamma_max;
  b.value = 2.0 * static_cast<Real>(n) * pairwise_difference_norm(w) /
            (lambda2 * kPi * sinc);
  return b;
}

RefBound k_bound_ref5(Real sigma, Real E0, Real Lstar) {
  check_connectivity_constant(Lstar, "Lstar");
  if (!(E0 >= 0) || !(sigma >= 0)) {
    throw std::invalid_argument("k_bound_ref5: need E0 >= 0 and sigma >= 0");
  }
  RefBound b;
  const Real d_c = std::max(kPi / 2, std::sqrt(2 * E0));
  b.feasible = strictly_less(d_c, kPi);
  if (!b.feasible) {
    b.value = kNaN;
    return b;
  }
  b.value = std::numbers::sqrt2 * sigma / (Lstar * std::sin(d_c));
  return b;
}

PhaseFlags phase_constraint_flags(const PhaseVector& phi0, Real D) {
  if (!phi0.centered) {
    throw std::invalid_argument(
        "phase_constraint_flags requires centered phases");
  }
  PhaseFlags flags;
  const Real e0 = energy(phi0);
  flags.ours = (D > 0) && strictly_less(D, kPi) && strictly_less(e0, D * D);
  flags.ref3 = strictly_less(pairwise_difference_norm(phi0.phi), kPi);
  flags.ref5 = strictly_less(e0, kPi * kPi / 2);
  return flags;
}

SyncCertificate certificate(const Graph& g, const FrequencyVector& f,
                            const PhaseVector& phi0,
                            std::optional<Real> D_choice,
                            std::optional<Real> k_star) {
  if (f.dev.size() != g.node_count() || phi0.phi.size() != g.node_count()) {
    throw std::invalid_argument("certificate: dimension mismatch");
  }
  const PhaseVector p0 =
      phi0.centered ? phi0 : center_phases(phi0.phi);

  SyncCertificate cert;
  const SpreadInfo spread = max_phase_spread(p0);
  cert.D0 = spread.spread;
  cert.E0 = energy(p0);
  cert.D = D_choice.value_or(cert.D0);

  const GraphConstants gc = graph_constants(g);
  const Real sigma = sigma_norm(f);
  const int n = g.node_count();

  cert.k_ref3 = k_bound_ref3(n, f.w, gc.lambda2, p0);
  cert.k_ref5 = k_bound_ref5(sigma, cert.E0, gc.Lstar);
  const bool d_admissible = cert.D > 0 && strictly_less(cert.D, kPi);
  if (d_admissible) {
    cert.flags = phase_constraint_flags(p0, cert.D);
  } else {
    cert.flags = PhaseFlags{false,
                            strictly_less(pairwise_difference_norm(p0.phi), kPi),
                            strictly_less(cert.E0, kPi * kPi / 2)};
  }

  cert.d_in_range = (cert.D0 <= cert.D + kStrictSlack) &&
                    (cert.D <= kPi / 2 + kStrictSlack);
  cert.th1_energy = strictly_less(cert.E0, 0.75 * cert.D * cert.D);
  cert.energy_only = strictly_less(cert.E0, cert.D * cert.D / 2);
  cert.th2_energy = strictly_less(cert.E0, cert.D * cert.D);

  if (is_homogeneous(sigma, f.wbar)) {
    // Identical frequencies synchronize at any coupling, including zero.
    cert.k_energy = 0;
    cert.k_analytic = AnalyticBound{0, cert.d_in_range && cert.th1_energy,
                                    cert.energy_only};
    cert.k_ours = 0;
    cert.winner = "trivial";
    return cert;
  }

  if (!d_admissible || !(cert.E0 > 0)) {
    // No admissible spread ceiling (or a degenerate all-equal start with
    // heterogeneous frequencies): nothing on our side applies.
    cert.k_energy = kNaN;
    cert.k_analytic = AnalyticBound{kNaN, false, false};
    cert.winner = "infeasible";
    return cert;
  }

  cert.k_energy = k_bound_energy(sigma, cert.D, cert.E0, gc.L);
  cert.k_analytic = k_bound_analytic(n, gc.min_degree, f.dev, cert.D, cert.E0);

  const bool analytic_ok =
      cert.k_analytic.feasible && cert.d_in_range;
  const bool refined_ok =
      k_star.has_value() && cert.th2_energy &&
      (cert.D0 <= cert.D + kStrictSlack);

  if (refined_ok) {
    cert.k_star = *k_star;
    cert.k_ours = std::max(cert.k_energy, *k_star);
    cert.winner = (*k_star > cert.k_energy) ? "optimization" : "energy";
  } else if (analytic_ok) {
    cert.k_ours = std::max(cert.k_energy, cert.k_analytic.value);
    cert.winner =
        (cert.k_analytic.value > cert.k_energy) ? "analytic" : "energy";
  } else {
    cert.winner = "infeasible";
  }
  return cert;
}

}  // namespace kursync
