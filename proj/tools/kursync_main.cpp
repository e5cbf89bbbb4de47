#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kursync/bounds.hpp"
#include "kursync/dynamics.hpp"
#include "kursync/experiments.hpp"
#include "kursync/io.hpp"
#include "kursync/optimizer.hpp"
#include "kursync/version.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace kursync;

std::vector<int> parse_n_range(const std::string& spec) {
  const auto parse_int = [&](const std::string& text) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return value;
    } catch (const std::exception&) {
      throw CLI::ValidationError("--n", "cannot parse '" + spec +
                                            "' (expected N or A..B)");
    }
  };
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    return {parse_int(spec)};
  }
  const int a = parse_int(spec.substr(0, dots));
  const int b = parse_int(spec.substr(dots + 2));
  if (a > b) {
    throw CLI::ValidationError("--n", "range start exceeds end in '" + spec +
                                          "'");
  }
  std::vector<int> values;
  for (int n = a; n <= b; ++n) values.push_back(n);
  return values;
}

std::string out_file(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

json experiment_params(const ExperimentConfig& cfg) {
  json params;
  params["seed"] = cfg.seed;
  params["samples"] = cfg.samples;
  params["n_range"] = cfg.n_range;
  params["freq_low"] = cfg.freq_low;
  params["freq_high"] = cfg.freq_high;
  params["threads"] = cfg.threads;
  return params;
}

struct CertifyArgs {
  std::string instance_path;
  std::string out_dir = ".";
  std::string instance_id;
  std::optional<Real> D_choice;
  std::uint64_t seed = 7;
};

void run_certify(const CertifyArgs& args) {
  const Instance inst = load_instance(args.instance_path);
  const Graph& g = inst.graph;
  const PhaseVector& p0 = inst.initial_phases;
  const Real d0 = p0.phi.maxCoeff() - p0.phi.minCoeff();
  const Real e0 = energy(p0);
  const Real d = args.D_choice.value_or(d0);

  std::optional<Real> refined;
  std::optional<KStarResult> pair_sweep;
  const bool optimizer_applies = d > 0 && strictly_less(d, std::numbers::pi) &&
                                 strictly_less(e0, d * d) &&
                                 d0 <= d + kStrictSlack;
  if (optimizer_applies) {
    pair_sweep = k_star(g, inst.frequencies, e0, d, args.seed);
    refined = pair_sweep->value;
  }

  const SyncCertificate cert =
      certificate(g, inst.frequencies, p0, args.D_choice, refined);

  const std::string id =
      args.instance_id.empty() ? fs::path(args.instance_path).stem().string()
                               : args.instance_id;
  const std::string cert_path = out_file(args.out_dir, "certificate.csv");
  write_certificate_csv(cert_path, id, cert);
  std::vector<std::string> outputs{cert_path};

  if (pair_sweep) {
    const std::string pairs_path = out_file(args.out_dir, "pairs.csv");
    write_pair_report_csv(pairs_path, *pair_sweep);
    outputs.push_back(pairs_path);
  }

  json params;
  params["instance"] = args.instance_path;
  params["instance_id"] = id;
  params["seed"] = args.seed;
  if (args.D_choice) params["D"] = *args.D_choice;
  write_manifest(out_file(args.out_dir, "certify_manifest.json"), "certify",
                 params.dump(), outputs);

  std::cout << "instance " << id << ": n=" << g.node_count()
            << " edges=" << g.edge_count() << "\n"
            << "D=" << format_real(cert.D) << " D0=" << format_real(cert.D0)
            << " E0=" << format_real(cert.E0) << "\n"
            << "k_energy=" << format_real(cert.k_energy) << " k_analytic="
            << (cert.k_analytic.feasible ? format_real(cert.k_analytic.value)
                                         : std::string("inf"))
            << " k_star="
            << (cert.k_star ? format_real(*cert.k_star) : std::string("-"))
            << " k_ref3="
            << (cert.k_ref3.feasible ? format_real(cert.k_ref3.value)
                                     : std::string("inf"))
            << " k_ref5="
            << (cert.k_ref5.feasible ? format_real(cert.k_ref5.value)
                                     : std::string("inf"))
            << "\n"
            << "winner: " << cert.winner;
  if (cert.k_ours) {
    std::cout << ", certified K = " << format_real(*cert.k_ours);
  }
  std::cout << "\n";
  for (const auto& path : outputs) std::cout << "wrote " << path << "\n";
}

struct SimulateArgs {
  std::string instance_path;
  std::string out_dir = ".";
  Real coupling = 0;
  std::optional<Real> horizon;
  std::optional<Real> step;
  std::optional<Real> D_choice;
  Real sync_tol = 1e-8;
  int record_every = 1;
  bool stop_on_sync = false;
};

void run_simulate(const SimulateArgs& args) {
  const Instance inst = load_instance(args.instance_path);
  const Graph& g = inst.graph;
  const PhaseVector& p0 = inst.initial_phases;
  const Real d0 = p0.phi.maxCoeff() - p0.phi.minCoeff();
  const Real d = args.D_choice.value_or(d0);

  SimConfig cfg = default_sim_config(g, inst.frequencies, args.coupling);
  if (args.horizon) cfg.horizon = *args.horizon;
  if (args.step) cfg.step = *args.step;
  cfg.sync_tol = args.sync_tol;
  cfg.record_every = args.record_every;
  cfg.stop_on_sync = args.stop_on_sync;

  const Trajectory traj =
      integrate(g, inst.frequencies, args.coupling, p0, cfg);

  const std::string traj_path = out_file(args.out_dir, "trajectory.csv");
  write_trajectory_csv(traj_path, traj);

  json params;
  params["instance"] = args.instance_path;
  params["K"] = args.coupling;
  params["step"] = cfg.step;
  params["horizon"] = cfg.horizon;
  params["sync_tol"] = cfg.sync_tol;
  params["record_every"] = cfg.record_every;
  params["stop_on_sync"] = cfg.stop_on_sync;
  params["D"] = d;
  write_manifest(out_file(args.out_dir, "simulate_manifest.json"), "simulate",
                 params.dump(), {traj_path});

  const PisResult pis = pis_check(traj, d);
  const Real final_residual = traj.residual.back();
  std::cout << "simulated t=[0," << format_real(traj.times.back())
            << "] steps_recorded=" << traj.size() << "\n";
  if (pis.pass) {
    std::cout << "PIS: pass (D=" << format_real(d) << ")\n";
  } else {
    std::cout << "PIS: fail at t=" << format_real(pis.first_violation_time)
              << " (D=" << format_real(d) << ")\n";
  }
  std::cout << (final_residual < args.sync_tol ? "sync: pass" : "sync: fail")
            << " (residual " << format_real(final_residual) << ")\n"
            << "wrote " << traj_path << "\n";
}

struct ExperimentArgs {
  ExperimentConfig cfg;
  std::string out_dir = ".";
  std::string n_spec;
  std::vector<std::string> topology_names;
  int samples_flag = -1;  // -1: use the per-experiment default
  bool paper_scale = false;
};

ExperimentConfig resolve_config(ExperimentArgs& args, int desk_samples,
                                int paper_samples) {
  args.cfg.n_range = parse_n_range(args.n_spec);
  args.cfg.samples = args.samples_flag > 0
                         ? args.samples_flag
                         : (args.paper_scale ? paper_samples : desk_samples);
  for (const auto& name : args.topology_names) {
    args.cfg.topologies.push_back(topology_from_name(name));
  }
  return args.cfg;
}

void run_exp1(ExperimentArgs& args) {
  const ExperimentConfig cfg = resolve_config(args, 10000, 100000);
  const auto rows = experiment1(cfg);
  const std::string csv_path = out_file(args.out_dir, "experiment1.csv");
  write_experiment1_csv(csv_path, cfg, rows);
  write_manifest(out_file(args.out_dir, "exp1_manifest.json"), "exp1",
                 experiment_params(cfg).dump(), {csv_path});
  std::cout << "wrote " << csv_path << " (" << rows.size() << " rows)\n";
}

void run_exp2(ExperimentArgs& args) {
  ExperimentConfig cfg = resolve_config(args, 200, 500);
  if (cfg.topologies.empty()) {
    cfg.topologies = {Topology::chain, Topology::ring, Topology::star_tree};
  }
  const auto rows = experiment2(cfg);
  const std::string csv_path = out_file(args.out_dir, "experiment2.csv");
  write_experiment2_csv(csv_path, cfg, rows);
  json params = experiment_params(cfg);
  auto& topo_names = params["topologies"] = json::array();
  for (const Topology t : cfg.topologies) topo_names.push_back(topology_name(t));
  write_manifest(out_file(args.out_dir, "exp2_manifest.json"), "exp2",
                 params.dump(), {csv_path});
  std::cout << "wrote " << csv_path << " (" << rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "kursync: coupling-strength certification and experiments for "
      "heterogeneous Kuramoto networks"};
  app.set_version_flag("--version", std::string(KURSYNC_VERSION));
  app.require_subcommand(1);

  CertifyArgs certify_args;
  auto* certify = app.add_subcommand(
      "certify", "Compute all coupling bounds for one instance");
  certify->add_option("--instance", certify_args.instance_path,
                      "instance JSON file")
      ->required();
  certify->add_option("--out", certify_args.out_dir, "output directory");
  certify->add_option("--id", certify_args.instance_id,
                      "instance id for the CSV (default: file stem)");
  Real certify_d = 0;
  auto* certify_d_opt = certify->add_option(
      "--D", certify_d, "spread ceiling override (default: initial spread)");
  certify->add_option("--seed", certify_args.seed, "optimizer seed")
      ->capture_default_str();
  certify->callback([&] {
    if (*certify_d_opt) certify_args.D_choice = certify_d;
    run_certify(certify_args);
  });

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand(
      "simulate", "Integrate one instance and report PIS/sync verdicts");
  simulate->add_option("--instance", simulate_args.instance_path,
                       "instance JSON file")
      ->required();
  simulate
      ->add_option("--K", simulate_args.coupling, "coupling strength")
      ->required()
      ->check(CLI::NonNegativeNumber);
  Real sim_horizon = 0, sim_step = 0, sim_d = 0;
  auto* horizon_opt =
      simulate->add_option("--horizon", sim_horizon, "final time (s)")
          ->check(CLI::PositiveNumber);
  auto* step_opt = simulate->add_option("--step", sim_step, "RK4 step (s)")
                       ->check(CLI::PositiveNumber);
  auto* sim_d_opt = simulate->add_option(
      "--D", sim_d, "spread ceiling for the PIS verdict (default: D0)");
  simulate->add_option("--sync-tol", simulate_args.sync_tol,
                       "residual threshold for the sync verdict")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--record-every", simulate_args.record_every,
                       "record every Nth step")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--stop-on-sync", simulate_args.stop_on_sync,
                     "stop once the residual drops below the threshold");
  simulate->add_option("--out", simulate_args.out_dir, "output directory");
  simulate->callback([&] {
    if (*horizon_opt) simulate_args.horizon = sim_horizon;
    if (*step_opt) simulate_args.step = sim_step;
    if (*sim_d_opt) simulate_args.D_choice = sim_d;
    run_simulate(simulate_args);
  });

  ExperimentArgs exp1_args;
  exp1_args.n_spec = "4..10";
  auto* exp1 = app.add_subcommand(
      "exp1", "Initial-phase-constraint feasibility fractions");
  exp1->add_option("--seed", exp1_args.cfg.seed, "master seed")
      ->capture_default_str();
  exp1->add_option("--samples", exp1_args.samples_flag,
                   "samples per n (default 10000; 100000 at paper scale)");
  exp1->add_option("--n", exp1_args.n_spec, "oscillator counts, N or A..B")
      ->capture_default_str();
  exp1->add_option("--threads", exp1_args.cfg.threads, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  exp1->add_flag("--paper-scale", exp1_args.paper_scale,
                 "use the publication sample counts");
  exp1->add_option("--out", exp1_args.out_dir, "output directory");
  exp1->callback([&] { run_exp1(exp1_args); });

  ExperimentArgs exp2_args;
  exp2_args.n_spec = "4..8";
  auto* exp2 = app.add_subcommand(
      "exp2", "Bound comparison across topologies");
  exp2->add_option("--seed", exp2_args.cfg.seed, "master seed")
      ->capture_default_str();
  exp2->add_option("--samples", exp2_args.samples_flag,
                   "samples per cell (default 200; 500 at paper scale)");
  exp2->add_option("--n", exp2_args.n_spec, "oscillator counts, N or A..B")
      ->capture_default_str();
  exp2->add_option("--topology", exp2_args.topology_names,
                   "chain, ring, star_tree (default: all three)")
      ->delimiter(',');
  exp2->add_option("--freq-low", exp2_args.cfg.freq_low,
                   "frequency interval lower end (rad/s)")
      ->capture_default_str();
  exp2->add_option("--freq-high", exp2_args.cfg.freq_high,
                   "frequency interval upper end (rad/s)")
      ->capture_default_str();
  exp2->add_option("--threads", exp2_args.cfg.threads, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  exp2->add_flag("--paper-scale", exp2_args.paper_scale,
                 "use the publication sample counts");
  exp2->add_option("--out", exp2_args.out_dir, "output directory");
  exp2->callback([&] { run_exp2(exp2_args); });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
