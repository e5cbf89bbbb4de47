// Acceptance suite: nine end-to-end checks covering the certified-coupling
// workflow (bounds -> optimizer -> simulation) and the two comparison
// experiments.  Each criterion prints exactly one line:
//   criterion N pass: <summary>     or     criterion N FAIL: <reason>
// Run all with no arguments, or a single one with --criterion N.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kursync/bounds.hpp"
#include "kursync/dynamics.hpp"
#include "kursync/experiments.hpp"
#include "kursync/graph.hpp"
#include "kursync/io.hpp"
#include "kursync/optimizer.hpp"
#include "kursync/rng.hpp"
#include "kursync/state.hpp"
#include "support.hpp"

namespace {

using namespace kursync;
namespace fs = std::filesystem;

constexpr Real kPi = std::numbers::pi_v<Real>;
constexpr std::uint64_t kSuiteSeed = 20260814;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(Real v) { return format_real(v); }

// ---------------------------------------------------------------------------
// Criterion 1: two-sided edge-energy inequality on random connected graphs.
// ---------------------------------------------------------------------------
Outcome criterion1() {
  SplitMix64 rng(derive_seed(kSuiteSeed, {1}));
  Real worst = std::numeric_limits<Real>::infinity();
  for (int t = 0; t < 1000; ++t) {
    const int n = 3 + t % 8;
    const Graph g = testsupport::random_connected_graph(n, rng);
    const PhaseVector p =
        testsupport::random_centered_phases(n, rng, rng.uniform(0.1, 2.0));
    const EdgeEnergySandwich s = edge_energy_sandwich(g, p);
    const Real scale = std::max(1.0, s.upper);
    const Real slack =
        std::min(s.edge_sum - s.lower, s.upper - s.edge_sum) / scale;
    worst = std::min(worst, slack);
    if (slack < -1e-12) {
      return {false, "sandwich violated at trial " + std::to_string(t) +
                         ": relative slack " + fmt(slack)};
    }
  }
  return {true, "1000 random graph/phase pairs, worst relative slack " +
                    fmt(worst) + " >= -1e-12"};
}

// ---------------------------------------------------------------------------
// Criterion 2: energy-decay differential inequality has nonnegative slack.
// ---------------------------------------------------------------------------
Outcome criterion2() {
  SplitMix64 rng(derive_seed(kSuiteSeed, {2}));
  Real worst = std::numeric_limits<Real>::infinity();
  for (int t = 0; t < 1000; ++t) {
    const int n = 3 + t % 8;
    const Graph g = testsupport::random_connected_graph(n, rng);
    const PhaseVector p =
        testsupport::random_centered_phases(n, rng, rng.uniform(0.05, 1.5));
    const Real spread = max_phase_spread(p).spread;
    const Real D = rng.uniform(spread, kPi - 1e-6);
    Vector w(n);
    for (int i = 0; i < n; ++i) w(i) = rng.uniform(0.0, 2.0);
    const Real K = rng.uniform(0.0, 10.0);
    const Real slack = energy_decay_slack(g, deviations(w), K, p, D);
    worst = std::min(worst, slack);
    if (slack < -1e-10) {
      return {false, "decay inequality violated at trial " +
                         std::to_string(t) + ": slack " + fmt(slack)};
    }
  }
  return {true, "1000 random states, worst inequality slack " + fmt(worst) +
                    " >= -1e-10"};
}

// ---------------------------------------------------------------------------
// Shared instance set for criteria 3, 4, and 9: seeded random instances with
// spread ceiling below pi/2 and energy inside the containment hypothesis by
// construction.
// ---------------------------------------------------------------------------
struct TestInstance {
  Graph g;
  FrequencyVector f;
  PhaseVector phi0;
  Real d0 = 0;
};

std::vector<TestInstance> certification_instances() {
  std::vector<TestInstance> out;
  out.reserve(100);
  for (int i = 0; i < 100; ++i) {
    SplitMix64 rng(derive_seed(kSuiteSeed, {3, static_cast<std::uint64_t>(i)}));
    const int n = 3 + i % 6;
    Graph g = [&]() -> Graph {
      switch (i % 4) {
        case 0: return make_topology(Topology::chain, n);
        case 1: return make_topology(Topology::ring, n);
        case 2: return make_topology(Topology::star_tree, n);
        default: return testsupport::complete_graph(n);
      }
    }();
    const Real d0 = rng.uniform(0.6, 1.55);
    PhaseVector phi0 = testsupport::tight_spread_phases(n, d0, rng);
    Vector w(n);
    for (int k = 0; k < n; ++k) w(k) = rng.uniform(0.0, 1.0);
    out.push_back({std::move(g), deviations(w), std::move(phi0), d0});
  }
  return out;
}

struct SimOutcome {
  bool contained = false;
  bool synced = false;
  Real final_residual = 0;
  Trajectory traj;
};

SimOutcome run_certified(const TestInstance& ti, Real coupling,
                         bool recenter) {
  SimConfig cfg = default_sim_config(ti.g, ti.f, coupling);
  cfg.stop_on_sync = true;
  cfg.sync_tol = 1e-6;
  cfg.recenter = recenter;
  SimOutcome out;
  out.traj = integrate(ti.g, ti.f, coupling, ti.phi0, cfg);
  out.contained = pis_check(out.traj, ti.d0).pass;
  out.final_residual = out.traj.residual.back();
  out.synced = out.final_residual < 1e-6;
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 3: closed-form certificate keeps every instance inside its spread
// ceiling and the run synchronizes.
// ---------------------------------------------------------------------------
Outcome criterion3() {
  const auto instances = certification_instances();
  int passed = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const TestInstance& ti = instances[i];
    const SyncCertificate cert = certificate(ti.g, ti.f, ti.phi0);
    if (!cert.k_analytic.feasible || !std::isfinite(cert.k_energy)) {
      return {false, "instance " + std::to_string(i) +
                         " unexpectedly fails the closed-form hypotheses"};
    }
    const Real coupling =
        std::max(cert.k_energy, cert.k_analytic.value) + 1e-9;
    const SimOutcome sim = run_certified(ti, coupling, true);
    if (!sim.contained || !sim.synced) {
      return {false, "instance " + std::to_string(i) + " (K=" +
                         fmt(coupling) + "): containment " +
                         (sim.contained ? "pass" : "FAIL") +
                         ", final residual " + fmt(sim.final_residual)};
    }
    ++passed;
  }
  return {true, std::to_string(passed) +
                    "/100 instances stay within the spread ceiling and "
                    "reach residual < 1e-6"};
}

// ---------------------------------------------------------------------------
// Criterion 4: optimizer refinement never exceeds the closed-form bound and
// still certifies containment + synchronization.
// ---------------------------------------------------------------------------
Outcome criterion4() {
  const auto instances = certification_instances();
  Real worst_margin = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const TestInstance& ti = instances[i];
    const SyncCertificate cert = certificate(ti.g, ti.f, ti.phi0);
    const KStarResult refined =
        k_star(ti.g, ti.f, ti.phi0, ti.d0,
               derive_seed(kSuiteSeed, {4, static_cast<std::uint64_t>(i)}));
    const Real margin = cert.k_analytic.value - refined.value;
    worst_margin = std::min(worst_margin, margin);
    if (refined.value > cert.k_analytic.value + 1e-6) {
      return {false, "instance " + std::to_string(i) + ": refined bound " +
                         fmt(refined.value) + " exceeds closed-form " +
                         fmt(cert.k_analytic.value)};
    }
    const Real coupling = std::max(cert.k_energy, refined.value) + 1e-9;
    const SimOutcome sim = run_certified(ti, coupling, true);
    if (!sim.contained || !sim.synced) {
      return {false, "instance " + std::to_string(i) + " (refined K=" +
                         fmt(coupling) + "): containment " +
                         (sim.contained ? "pass" : "FAIL") +
                         ", final residual " + fmt(sim.final_residual)};
    }
  }
  return {true, "refined bound <= closed-form bound on all 100 instances "
                "(smallest margin " +
                    fmt(worst_margin) + ") and every refined run certifies"};
}

// ---------------------------------------------------------------------------
// Criterion 5: pair minimizer agrees with the brute-force grid oracle on a
// fixed 24-problem matrix.
// ---------------------------------------------------------------------------
Outcome criterion5() {
  int checked = 0;
  Real worst_gap = 0;
  for (const int n : {3, 4}) {
    const Graph graphs[] = {make_topology(Topology::chain, n),
                            make_topology(Topology::ring, n),
                            testsupport::complete_graph(n)};
    for (const Graph& g : graphs) {
      const Real settings[][2] = {{kPi / 2, 0.7}, {2.4, 0.9}};
      for (const auto& s : settings) {
        const Real D = s[0];
        const Real E0 = s[1] * D * D;
        const std::pair<int, int> pairs[] = {{1, 2}, {1, n}};
        for (const auto& [hi, lo] : pairs) {
          PairProblem prob;
          prob.hi = hi;
          prob.lo = lo;
          prob.D = D;
          prob.E0 = E0;
          prob.graph = &g;
          const PairBoundResult r = minimize_pair(
              prob,
              derive_seed(kSuiteSeed, {5, static_cast<std::uint64_t>(checked)}));
          const OracleResult oracle = brute_force_oracle(prob, 2001);
          if (!oracle.feasible || r.status == PairStatus::infeasible) {
            return {false, "problem " + std::to_string(checked) +
                               " unexpectedly infeasible"};
          }
          const int m = n - 2;
          const Real spacing = 2 * std::sqrt(E0) / 2000.0;
          const Real tol = 2.0 * m * (n + 1) * spacing + 1e-8;
          const Real gap = std::abs(r.min_denominator - oracle.minimum);
          worst_gap = std::max(worst_gap, gap);
          if (gap > tol) {
            return {false, "problem " + std::to_string(checked) +
                               " (n=" + std::to_string(n) + ", D=" + fmt(D) +
                               ", pair " + std::to_string(hi) + "," +
                               std::to_string(lo) + "): |solver - oracle| = " +
                               fmt(gap) + " > " + fmt(tol)};
          }
          ++checked;
        }
      }
    }
  }
  return {true, std::to_string(checked) +
                    " problems match the 2001-point grid oracle (worst gap " +
                    fmt(worst_gap) + ")"};
}

// ---------------------------------------------------------------------------
// Criterion 6: feasibility-fraction experiment reproduces the published
// ordering (ours least restrictive, monotone in n).
// ---------------------------------------------------------------------------
ExperimentConfig feasibility_config() {
  ExperimentConfig cfg;
  cfg.seed = 7;
  cfg.samples = 10000;
  cfg.n_range = {4, 5, 6, 7, 8, 9, 10};
  return cfg;
}

Outcome criterion6() {
  const auto rows = experiment1(feasibility_config());
  Real prev_ours = 1.0;
  std::string fracs;
  for (const FeasibilityRow& row : rows) {
    if (!(row.frac_ours >= row.frac_ref5 && row.frac_ref5 >= row.frac_ref3)) {
      return {false, "n=" + std::to_string(row.n) + ": ordering broken (" +
                         fmt(row.frac_ours) + ", " + fmt(row.frac_ref5) +
                         ", " + fmt(row.frac_ref3) + ")"};
    }
    if (row.frac_ours > prev_ours) {
      return {false, "n=" + std::to_string(row.n) +
                         ": frac_ours increased to " + fmt(row.frac_ours)};
    }
    prev_ours = row.frac_ours;
    fracs += (fracs.empty() ? "" : " ") + fmt(row.frac_ours);
  }
  return {true, "ours >= ref5 >= ref3 for n = 4..10 and ours non-increasing "
                "(" + fracs + ")"};
}

// ---------------------------------------------------------------------------
// Criterion 7: bound-comparison experiment beats both references on most
// cells.
// ---------------------------------------------------------------------------
ExperimentConfig comparison_config() {
  ExperimentConfig cfg;
  cfg.seed = 7;
  cfg.samples = 200;
  cfg.n_range = {4, 5, 6, 7, 8};
  cfg.topologies = {Topology::chain, Topology::ring, Topology::star_tree};
  return cfg;
}

Outcome criterion7() {
  const auto rows = experiment2(comparison_config());
  int winning = 0;
  for (const ComparisonRow& row : rows) {
    if (row.frac_beat_ref3 > 0.5 && row.frac_beat_ref5 > 0.5) ++winning;
  }
  const bool pass = winning >= 13;
  return {pass, std::to_string(winning) + " of " + std::to_string(rows.size()) +
                    " cells have frac_beat_ref3 > 0.5 and frac_beat_ref5 > "
                    "0.5 (need >= 13)"};
}

// ---------------------------------------------------------------------------
// Criterion 8: experiment CSVs are byte-identical across reruns and worker
// counts.
// ---------------------------------------------------------------------------
std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion8() {
  const fs::path dir = fs::temp_directory_path() / "kursync_acceptance";
  fs::create_directories(dir);

  const auto exp1_bytes = [&](int threads, const char* name) {
    ExperimentConfig cfg = feasibility_config();
    cfg.threads = threads;
    const std::string path = (dir / name).string();
    write_experiment1_csv(path, cfg, experiment1(cfg));
    return file_bytes(path);
  };
  const std::string a1 = exp1_bytes(1, "exp1_a.csv");
  const std::string b1 = exp1_bytes(1, "exp1_b.csv");
  const std::string c1 = exp1_bytes(4, "exp1_c.csv");
  if (a1.empty() || a1 != b1 || a1 != c1) {
    return {false, "feasibility CSV differs across reruns or worker counts"};
  }

  const auto exp2_bytes = [&](int threads, const char* name) {
    ExperimentConfig cfg = comparison_config();
    cfg.threads = threads;
    const std::string path = (dir / name).string();
    write_experiment2_csv(path, cfg, experiment2(cfg));
    return file_bytes(path);
  };
  const std::string a2 = exp2_bytes(1, "exp2_a.csv");
  const std::string b2 = exp2_bytes(1, "exp2_b.csv");
  const std::string c2 = exp2_bytes(4, "exp2_c.csv");
  if (a2.empty() || a2 != b2 || a2 != c2) {
    return {false, "comparison CSV differs across reruns or worker counts"};
  }

  std::error_code ec;
  fs::remove_all(dir, ec);
  return {true, "both experiment CSVs byte-identical across two serial runs "
                "and a 4-worker run"};
}

// ---------------------------------------------------------------------------
// Criterion 9: integrator sanity — fourth-order convergence, zero-sum drift,
// and monotone potential along every certified trajectory.
// ---------------------------------------------------------------------------
Outcome criterion9() {
  // Order study on the two-oscillator instance (converges to the equilibrium
  // with gap asin(1/2)).
  const Graph g2 = make_topology(Topology::chain, 2);
  Vector w2(2);
  w2 << 0.0, 1.0;
  const FrequencyVector f2 = deviations(w2);
  Vector start(2);
  start << -0.8, 0.8;
  const PhaseVector p2 = center_phases(start);

  const auto final_state = [&](Real step) {
    SimConfig cfg;
    cfg.step = step;
    cfg.horizon = 2.0;
    cfg.record_every = 1 << 20;
    cfg.recenter = false;
    return integrate(g2, f2, 2.0, p2, cfg).states.back();
  };
  const Vector reference = final_state(0.1 / 64);
  const Real e_coarse =
      (final_state(0.1) - reference).cwiseAbs().maxCoeff();
  const Real e_fine =
      (final_state(0.05) - reference).cwiseAbs().maxCoeff();
  const Real ratio = e_coarse / e_fine;
  if (!(ratio >= 12.8 && ratio <= 19.2)) {
    return {false, "step-halving error ratio " + fmt(ratio) +
                       " outside [12.8, 19.2]"};
  }

  // Drift and potential monotonicity on the certified instance set, without
  // the recentering projection so any drift would be visible.
  const auto instances = certification_instances();
  Real worst_drift = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const TestInstance& ti = instances[i];
    const SyncCertificate cert = certificate(ti.g, ti.f, ti.phi0);
    const Real coupling =
        std::max(cert.k_energy, cert.k_analytic.value) + 1e-9;
    const SimOutcome sim = run_certified(ti, coupling, false);
    for (const Vector& state : sim.traj.states) {
      worst_drift = std::max(worst_drift, std::abs(state.mean()));
    }
    if (worst_drift > 1e-8) {
      return {false, "instance " + std::to_string(i) + ": zero-sum drift " +
                         fmt(worst_drift) + " > 1e-8"};
    }
    for (std::size_t k = 0; k + 1 < sim.traj.lyapunov.size(); ++k) {
      if (sim.traj.lyapunov[k + 1] > sim.traj.lyapunov[k] + 1e-6) {
        return {false, "instance " + std::to_string(i) +
                           ": potential increased by " +
                           fmt(sim.traj.lyapunov[k + 1] -
                               sim.traj.lyapunov[k]) +
                           " at t=" + fmt(sim.traj.times[k + 1])};
      }
    }
  }
  return {true, "error ratio " + fmt(ratio) +
                    " in [12.8, 19.2]; worst zero-sum drift " +
                    fmt(worst_drift) +
                    "; potential non-increasing on all 100 trajectories"};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > 9) {
    std::fprintf(stderr, "criterion must be 1..9\n");
    return 2;
  }

  using Criterion = Outcome (*)();
  const Criterion criteria[] = {criterion1, criterion2, criterion3,
                                criterion4, criterion5, criterion6,
                                criterion7, criterion8, criterion9};
  bool all_pass = true;
  for (int c = 1; c <= 9; ++c) {
    if (only != 0 && c != only) continue;
    Outcome result;
    try {
      result = criteria[c - 1]();
    } catch (const std::exception& e) {
      result = {false, std::string("unexpected exception: ") + e.what()};
    }
    std::printf("criterion %d %s: %s\n", c, result.pass ? "pass" : "FAIL",
                result.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && result.pass;
  }
  return all_pass ? 0 : 1;
}
