#include "kursync/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "kursync/version.hpp"

namespace kursync {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  return out;
}

int line_of_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

[[noreturn]] void fail_at(const std::string& path, int line,
                          const std::string& message) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + message);
}

Vector to_vector(const json& arr, const std::string& path,
                 const std::string& field) {
  if (!arr.is_array()) {
    throw std::runtime_error(path + ": field '" + field +
                             "' must be an array of numbers");
  }
  Vector v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& item : arr) {
    if (!item.is_number()) {
      throw std::runtime_error(path + ": field '" + field +
                               "' must contain only numbers");
    }
    const Real value = item.get<Real>();
    if (!std::isfinite(value)) {
      throw std::runtime_error(path + ": field '" + field +
                               "' has a non-finite entry");
    }
    v(i++) = value;
  }
  return v;
}

}  // namespace

std::string format_real(Real v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  if (result.ec != std::errc()) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buf, result.ptr);
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  int n = -1;
  int m = -1;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (n < 0) {
      if (!(fields >> n >> m) || n < 0 || m < 0) {
        fail_at(path, line_no, "expected header line 'n m'");
      }
    } else {
      int u = 0, v = 0;
      if (!(fields >> u >> v)) {
        fail_at(path, line_no, "expected edge line 'u v'");
      }
      edges.emplace_back(u, v);
    }
    std::string extra;
    if (fields >> extra) {
      fail_at(path, line_no, "unexpected trailing token '" + extra + "'");
    }
  }
  if (n < 0) {
    fail_at(path, line_no, "missing header line 'n m'");
  }
  if (static_cast<int>(edges.size()) != m) {
    fail_at(path, line_no,
            "expected " + std::to_string(m) + " edges, found " +
                std::to_string(edges.size()));
  }
  try {
    return build_graph(n, edges);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at(path, line_of_byte(text, e.byte), "JSON parse error: " + std::string(e.what()));
  } catch (const json::exception& e) {
    // e.g. number overflow: rejected while parsing but without a byte offset
    throw std::runtime_error(path + ": JSON error: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("graph") ||
      !doc.contains("frequencies") || !doc.contains("initial_phases")) {
    throw std::runtime_error(
        path + ": instance needs 'graph', 'frequencies', 'initial_phases'");
  }
  const json& graph_doc = doc["graph"];
  if (!graph_doc.is_object() || !graph_doc.contains("n") ||
      !graph_doc.contains("edges") || !graph_doc["n"].is_number_integer()) {
    throw std::runtime_error(path +
                             ": 'graph' needs integer 'n' and 'edges' array");
  }
  const int n = graph_doc["n"].get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : graph_doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw std::runtime_error(path + ": each edge must be a pair [u, v]");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }

  const Vector w = to_vector(doc["frequencies"], path, "frequencies");
  const Vector phi = to_vector(doc["initial_phases"], path, "initial_phases");
  if (w.size() != n || phi.size() != n) {
    throw std::runtime_error(
        path + ": 'frequencies' and 'initial_phases' must have length n=" +
        std::to_string(n));
  }

  try {
    return Instance{build_graph(n, edges), deviations(w), center_phases(phi)};
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_instance(const std::string& path, const Instance& inst) {
  json doc;
  doc["graph"]["n"] = inst.graph.node_count();
  auto& edges = doc["graph"]["edges"] = json::array();
  for (const auto& [u, v] : inst.graph.edges()) {
    edges.push_back({u, v});
  }
  auto& freqs = doc["frequencies"] = json::array();
  for (Eigen::Index i = 0; i < inst.frequencies.w.size(); ++i) {
    freqs.push_back(inst.frequencies.w(i));
  }
  auto& phases = doc["initial_phases"] = json::array();
  for (Eigen::Index i = 0; i < inst.initial_phases.phi.size(); ++i) {
    phases.push_back(inst.initial_phases.phi(i));
  }
  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_for_write(path);
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  out << "t";
  for (Eigen::Index i = 1; i <= n; ++i) out << ",phi_" << i;
  out << ",D_t,E_t,V,residual\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << format_real(traj.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      out << ',' << format_real(traj.states[k](i));
    }
    out << ',' << format_real(traj.spread[k]) << ','
        << format_real(traj.energy[k]) << ','
        << format_real(traj.lyapunov[k]) << ','
        << format_real(traj.residual[k]) << '\n';
  }
}

namespace {

std::string bound_field(Real value, bool feasible) {
  return feasible ? format_real(value) : "inf";
}

}  // namespace

void write_certificate_csv(const std::string& path,
                           const std::string& instance_id,
                           const SyncCertificate& cert) {
  auto out = open_for_write(path);
  out << "instance_id,D,D0,E0,k_energy,k_analytic,k_star,k_ref3,k_ref5,"
         "flag_ours,flag_ref3,flag_ref5,winner\n";
  out << instance_id << ',' << format_real(cert.D) << ','
      << format_real(cert.D0) << ',' << format_real(cert.E0) << ','
      << format_real(cert.k_energy) << ','
      << bound_field(cert.k_analytic.value, cert.k_analytic.feasible) << ','
      << (cert.k_star ? format_real(*cert.k_star) : std::string()) << ','
      << bound_field(cert.k_ref3.value, cert.k_ref3.feasible) << ','
      << bound_field(cert.k_ref5.value, cert.k_ref5.feasible) << ','
      << (cert.flags.ours ? 1 : 0) << ',' << (cert.flags.ref3 ? 1 : 0) << ','
      << (cert.flags.ref5 ? 1 : 0) << ',' << cert.winner << '\n';
}

void write_pair_report_csv(const std::string& path,
                           const KStarResult& result) {
  auto out = open_for_write(path);
  out << "k,l,min_denominator,K_kl,status,starts_used\n";
  for (const auto& pair : result.pairs) {
    out << pair.hi << ',' << pair.lo << ',';
    const char* status = "infeasible";
    if (pair.status == PairStatus::converged) status = "converged";
    if (pair.status == PairStatus::boundary) status = "boundary";
    if (pair.status == PairStatus::infeasible) {
      out << ",," << status;
    } else {
      out << format_real(pair.min_denominator) << ','
          << format_real(pair.coupling_bound) << ',' << status;
    }
    out << ',' << pair.starts_used << '\n';
  }
}

void write_experiment1_csv(const std::string& path,
                           const ExperimentConfig& cfg,
                           const std::vector<FeasibilityRow>& rows) {
  auto out = open_for_write(path);
  out << "# seed=" << cfg.seed << " samples=" << cfg.samples << '\n';
  out << "n,frac_ours,frac_ref3,frac_ref5\n";
  for (const auto& row : rows) {
    out << row.n << ',' << format_real(row.frac_ours) << ','
        << format_real(row.frac_ref3) << ',' << format_real(row.frac_ref5)
        << '\n';
  }
}

void write_experiment2_csv(const std::string& path,
                           const ExperimentConfig& cfg,
                           const std::vector<ComparisonRow>& rows) {
  auto out = open_for_write(path);
  out << "# seed=" << cfg.seed << " samples=" << cfg.samples << '\n';
  out << "topology,n,feasible_count,mean_ours,mean_ref3,mean_ref5,"
         "frac_beat_ref3,frac_beat_ref5\n";
  for (const auto& row : rows) {
    out << topology_name(row.topology) << ',' << row.n << ','
        << row.feasible_count << ',' << format_real(row.mean_ours) << ','
        << format_real(row.mean_ref3) << ',' << format_real(row.mean_ref5)
        << ',' << format_real(row.frac_beat_ref3) << ','
        << format_real(row.frac_beat_ref5) << '\n';
  }
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::string& parameters_json,
                    const std::vector<std::string>& outputs) {
  json doc;
  doc["command"] = command;
  doc["tool_version"] = KURSYNC_VERSION;
  doc["parameters"] = json::parse(parameters_json);
  doc["outputs"] = outputs;
  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
}

}  // namespace kursync
