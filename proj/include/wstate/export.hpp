#pragma once

// Plot-ready CSV and JSON output. Numbers are written with 12 significant
// digits; failed sweep cells are written as "nan".

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wstate/analysis.hpp"
#include "wstate/protocols.hpp"

namespace wstate {

std::string format_number(double x);

/// Columns t, Re Omega1, Im Omega1, Re Omega_s, Im Omega_s on n + 1 evenly spaced samples.
void write_pulse_csv(std::ostream& os, const PulseSchedule& s, double t_begin, double t_end, int n);

/// Columns t, then the requested observables ("fidelity" or population keys).
/// An empty list writes fidelity followed by every population curve.
void write_trajectory_csv(std::ostream& os, const ProtocolResult& r, const std::vector<std::string>& columns = {});

/// First row: axis-name corner cell then the axis2 grid; each further row:
/// axis1 value then fidelities.
void write_matrix_csv(std::ostream& os, const SweepResult& r);

/// Columns deviation, value, fidelity, drop.
void write_scan_csv(std::ostream& os, const ScanResult& r);

nlohmann::json job_json(const JobSpec& job);
nlohmann::json result_json(const ProtocolResult& r, const JobSpec& job, const std::string& trajectory_file);
nlohmann::json sweep_meta_json(const SweepResult& r);
nlohmann::json scan_meta_json(const ScanResult& r);
nlohmann::json errors_json(const std::vector<CellError>& errors);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace wstate
