#pragma once

// Parameter sweeps, robustness scans and decoherence maps over protocol jobs.
// Cells are independent and evaluated by a small worker pool; results are
// written by cell index, so output never depends on the number of workers.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wstate/protocols.hpp"

namespace wstate {

/// Registered sweep parameters: omega0, tf, delta, gamma, kappa, nu, T, correction, omega1.
const std::vector<std::string>& parameter_registry();
bool parameter_applies(Protocol p, const std::string& name);
double get_parameter(const JobSpec& job, const std::string& name);
void set_parameter(JobSpec& job, const std::string& name, double value);

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int points = 1;

  void validate() const;
  /// Evenly spaced, inclusive of both ends; a single point sits at `min`.
  [[nodiscard]] std::vector<double> values() const;
};

struct SweepSpec {
  JobSpec base;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;

  void validate() const;
};

struct CellError {
  int row = 0;
  int col = 0;
  std::string message;
};

struct SweepResult {
  Protocol protocol = Protocol::Shortcut;
  JobSpec base;
  std::string axis1_name;
  std::string axis2_name;
  std::vector<double> grid1;
  std::vector<double> grid2;
  /// rows follow grid1, columns grid2; failed cells hold NaN.
  Eigen::MatrixXd fidelity;
  std::vector<CellError> errors;
};

/// Runs `fn(i)` for i in [0, n) on `workers` threads (1 = inline).
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

SweepResult sweep(const SweepSpec& spec, int workers = 1);

struct ScanResult {
  Protocol protocol = Protocol::Shortcut;
  JobSpec base;
  std::string parameter;
  double baseline_value = 0.0;
  double baseline_fidelity = 0.0;
  std::vector<double> deviations;  // relative, x' = x (1 + d)
  std::vector<double> fidelities;  // NaN on failure
  std::vector<CellError> errors;

  /// baseline_fidelity - fidelity at the given deviation (must be on the grid).
  [[nodiscard]] double drop_at(double deviation) const;
};

ScanResult robustness_scan(const JobSpec& base, const std::string& parameter, const std::vector<double>& deviations,
                           int workers = 1);
std::vector<double> linspace(double lo, double hi, int n);

/// Lindblad evolution over gamma (rows) x kappa (columns).
SweepResult decoherence_map(const JobSpec& base, const std::vector<double>& gamma_grid,
                            const std::vector<double>& kappa_grid, int workers = 1);

/// Shortcut baseline of the total-time robustness study: Delta = 3, tf = 35, T = 40.
JobSpec shortcut_robustness_baseline();

}  // namespace wstate
