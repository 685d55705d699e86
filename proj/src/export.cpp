#include "wstate/export.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wstate {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream ss;
  ss.precision(12);
  ss << x;
  return ss.str();
}

void write_pulse_csv(std::ostream& os, const PulseSchedule& s, double t_begin, double t_end, int n) {
  if (n < 1) throw std::invalid_argument("write_pulse_csv: n must be >= 1");
  os << "t,re_omega1,im_omega1,re_omega_s,im_omega_s\n";
  for (int i = 0; i <= n; ++i) {
    const double t = t_begin + (t_end - t_begin) * i / n;
    const cplx o1 = s.omega1(t);
    const cplx os_ = s.omega_s(t);
    os << format_number(t) << ',' << format_number(o1.real()) << ',' << format_number(o1.imag()) << ','
       << format_number(os_.real()) << ',' << format_number(os_.imag()) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const ProtocolResult& r, const std::vector<std::string>& columns) {
  std::vector<std::string> names = columns;
  if (names.empty()) {
    names.push_back("fidelity");
    for (const auto& [key, _] : r.populations) names.push_back(key);
  }
  std::vector<const std::vector<double>*> data;
  for (const auto& name : names) {
    if (name == "fidelity") {
      data.push_back(&r.fidelity);
    } else {
      auto it = r.populations.find(name);
      if (it == r.populations.end()) throw std::invalid_argument("unknown trajectory column '" + name + "'");
      data.push_back(&it->second);
    }
  }
  os << 't';
  for (const auto& name : names) os << ',' << name;
  os << '\n';
  for (std::size_t i = 0; i < r.times().size(); ++i) {
    os << format_number(r.times()[i]);
    for (const auto* col : data) os << ',' << format_number((*col)[i]);
    os << '\n';
  }
}

void write_matrix_csv(std::ostream& os, const SweepResult& r) {
  os << r.axis1_name << '\\' << (r.axis2_name.empty() ? "-" : r.axis2_name);
  for (double v : r.grid2) os << ',' << format_number(v);
  os << '\n';
  for (std::size_t i = 0; i < r.grid1.size(); ++i) {
    os << format_number(r.grid1[i]);
    for (std::size_t j = 0; j < r.grid2.size(); ++j) os << ',' << format_number(r.fidelity(i, j));
    os << '\n';
  }
}

void write_scan_csv(std::ostream& os, const ScanResult& r) {
  os << "deviation,value,fidelity,drop\n";
  for (std::size_t i = 0; i < r.deviations.size(); ++i) {
    const double d = r.deviations[i];
    os << format_number(d) << ',' << format_number(r.baseline_value * (1.0 + d)) << ','
       << format_number(r.fidelities[i]) << ',' << format_number(r.baseline_fidelity - r.fidelities[i]) << '\n';
  }
}

nlohmann::json job_json(const JobSpec& job) {
  nlohmann::json j;
  j["protocol"] = to_string(job.protocol);
  j["n_atoms"] = job.n_atoms;
  j["tf"] = job.effective_tf();
  j["T"] = job.effective_cutoff();
  j["gamma"] = job.gamma;
  j["kappa"] = job.kappa;
  j["steps"] = job.n_steps;
  switch (job.protocol) {
    case Protocol::Adiabatic:
      j["omega0"] = job.omega0;
      j["alpha"] = job.alpha;
      break;
    case Protocol::Zeno:
      j["omega1"] = job.omega1;
      j["branch"] = job.branch;
      break;
    case Protocol::Shortcut:
      j["delta"] = job.delta;
      j["correction"] = job.correction;
      j["nu"] = job.nu_scale;
      j["alpha"] = job.alpha;
      break;
  }
  return j;
}

nlohmann::json result_json(const ProtocolResult& r, const JobSpec& job, const std::string& trajectory_file) {
  nlohmann::json j;
  j["protocol"] = to_string(r.protocol);
  j["final_fidelity"] = r.final_fidelity;
  j["parameters"] = job_json(job);
  j["diagnostics"] = r.diagnostics;
  j["warnings"] = r.warnings;
  j["trajectory"] = trajectory_file;
  return j;
}

nlohmann::json sweep_meta_json(const SweepResult& r) {
  nlohmann::json j;
  j["protocol"] = to_string(r.protocol);
  j["fixed_parameters"] = job_json(r.base);
  j["axis1"] = {{"name", r.axis1_name}, {"grid", r.grid1}};
  if (!r.axis2_name.empty()) j["axis2"] = {{"name", r.axis2_name}, {"grid", r.grid2}};
  j["integrator"] = {{"method", "rk4"}, {"steps", r.base.n_steps}, {"max_refinements", 3}};
  j["failed_cells"] = r.errors.size();
  j["matrix"] = "matrix.csv";
  return j;
}

nlohmann::json scan_meta_json(const ScanResult& r) {
  nlohmann::json j;
  j["protocol"] = to_string(r.protocol);
  j["fixed_parameters"] = job_json(r.base);
  j["parameter"] = r.parameter;
  j["baseline_value"] = r.baseline_value;
  j["baseline_fidelity"] = r.baseline_fidelity;
  j["integrator"] = {{"method", "rk4"}, {"steps", r.base.n_steps}, {"max_refinements", 3}};
  j["failed_points"] = r.errors.size();
  j["curve"] = "curve.csv";
  return j;
}

nlohmann::json errors_json(const std::vector<CellError>& errors) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : errors) arr.push_back({{"row", e.row}, {"col", e.col}, {"message", e.message}});
  return arr;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << contents;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace wstate
