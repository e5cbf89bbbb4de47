#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kursync/bounds.hpp"
#include "kursync/dynamics.hpp"
#include "kursync/experiments.hpp"
#include "kursync/graph.hpp"
#include "kursync/optimizer.hpp"
#include "kursync/state.hpp"
#include "kursync/types.hpp"

namespace kursync {

// Shortest round-trip decimal rendering; "nan"/"inf" for non-finite values.
std::string format_real(Real v);

// Text graph format: comments start with '#'; the first data line is "n m",
// followed by m lines "u v" with 1-indexed endpoints.
Graph load_graph_file(const std::string& path);

struct Instance {
  Graph graph;
  FrequencyVector frequencies;
  PhaseVector initial_phases;  // centered on load (global shifts are gauge)
};

// JSON instance document:
//   {"graph": {"n": ..., "edges": [[u, v], ...]},
//    "frequencies": [...], "initial_phases": [...]}
// Phases in radians, frequencies in rad/s.  Parse and validation errors carry
// the file path and, for syntax errors, the line number.
Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);

// One row: instance_id,D,D0,E0,k_energy,k_analytic,k_star,k_ref3,k_ref5,
// flag_ours,flag_ref3,flag_ref5,winner.  Infeasible bounds render as "inf",
// an absent optimizer bound as an empty field.
void write_certificate_csv(const std::string& path,
                           const std::string& instance_id,
                           const SyncCertificate& cert);

// Per-pair optimizer report: k,l,min_denominator,K_kl,status,starts_used.
void write_pair_report_csv(const std::string& path, const KStarResult& result);

void write_experiment1_csv(const std::string& path,
                           const ExperimentConfig& cfg,
                           const std::vector<FeasibilityRow>& rows);

void write_experiment2_csv(const std::string& path,
                           const ExperimentConfig& cfg,
                           const std::vector<ComparisonRow>& rows);

// Reproducibility sidecar: command, resolved parameters (JSON text), tool
// version, and the files the command wrote.
void write_manifest(const std::string& path, const std::string& command,
                    const std::string& parameters_json,
                    const std::vector<std::string>& outputs);

}  // namespace kursync
