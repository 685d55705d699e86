#include "wstate/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace wstate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double run_fidelity(const JobSpec& job) {
  JobSpec quiet = job;
  quiet.store_every = 0;
  return run_job(quiet).final_fidelity;
}

}  // namespace

const std::vector<std::string>& parameter_registry() {
  static const std::vector<std::string> names{"omega0", "tf", "delta", "gamma", "kappa",
                                              "nu",     "T",  "correction", "omega1"};
  return names;
}

bool parameter_applies(Protocol p, const std::string& name) {
  if (name == "tf" || name == "T" || name == "gamma" || name == "kappa") return true;
  switch (p) {
    case Protocol::Adiabatic: return name == "omega0";
    case Protocol::Zeno: return name == "omega1";
    case Protocol::Shortcut: return name == "delta" || name == "nu" || name == "correction";
  }
  return false;
}

double get_parameter(const JobSpec& job, const std::string& name) {
  if (!parameter_applies(job.protocol, name)) {
    throw std::invalid_argument("parameter '" + name + "' does not apply to the " + to_string(job.protocol) +
                                " protocol");
  }
  if (name == "omega0") return job.omega0;
  if (name == "tf") return job.effective_tf();
  if (name == "delta") return job.delta;
  if (name == "gamma") return job.gamma;
  if (name == "kappa") return job.kappa;
  if (name == "nu") return job.nu_scale;
  if (name == "T") return job.effective_cutoff();
  if (name == "correction") return job.correction;
  return job.omega1;
}

void set_parameter(JobSpec& job, const std::string& name, double value) {
  if (!parameter_applies(job.protocol, name)) {
    throw std::invalid_argument("parameter '" + name + "' does not apply to the " + to_string(job.protocol) +
                                " protocol");
  }
  if (name == "omega0") {
    job.omega0 = value;
  } else if (name == "tf") {
    // For the Zeno scheme tf is the evolution time; elsewhere it rescales the pulses.
    if (job.protocol == Protocol::Zeno) {
      job.cutoff = value;
    }
    job.tf = value;
  } else if (name == "delta") {
    job.delta = value;
  } else if (name == "gamma") {
    job.gamma = value;
  } else if (name == "kappa") {
    job.kappa = value;
  } else if (name == "nu") {
    job.nu_scale = value;
  } else if (name == "T") {
    job.cutoff = value;
  } else if (name == "correction") {
    job.correction = value;
  } else {
    job.omega1 = value;
  }
}

void SweepAxis::validate() const {
  const auto& reg = parameter_registry();
  if (std::find(reg.begin(), reg.end(), name) == reg.end()) {
    throw std::invalid_argument("unknown sweep parameter '" + name + "'");
  }
  if (points < 1) throw std::invalid_argument("sweep axis '" + name + "' is empty");
  if (!std::isfinite(min) || !std::isfinite(max)) throw std::invalid_argument("sweep axis bounds must be finite");
  if (points > 1 && !(max > min)) throw std::invalid_argument("sweep axis '" + name + "' must be increasing");
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace: n must be >= 1");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0);
  return out;
}

std::vector<double> SweepAxis::values() const { return linspace(min, max, points); }

void SweepSpec::validate() const {
  base.validate();
  axis1.validate();
  if (!parameter_applies(base.protocol, axis1.name)) {
    throw std::invalid_argument("parameter '" + axis1.name + "' does not apply to " + to_string(base.protocol));
  }
  if (axis2) {
    axis2->validate();
    if (!parameter_applies(base.protocol, axis2->name)) {
      throw std::invalid_argument("parameter '" + axis2->name + "' does not apply to " + to_string(base.protocol));
    }
    if (axis2->name == axis1.name) throw std::invalid_argument("sweep axes must differ");
  }
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  workers = std::clamp(workers, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

SweepResult run_grid(const JobSpec& base, const std::string& name1, const std::vector<double>& grid1,
                     const std::string& name2, const std::vector<double>& grid2, int workers) {
  SweepResult out;
  out.protocol = base.protocol;
  out.base = base;
  out.axis1_name = name1;
  out.axis2_name = name2;
  out.grid1 = grid1;
  out.grid2 = grid2;
  const int rows = static_cast<int>(grid1.size());
  const int cols = static_cast<int>(grid2.size());
  out.fidelity = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  std::vector<std::string> messages(static_cast<std::size_t>(rows) * cols);

  parallel_for(rows * cols, workers, [&](int cell) {
    const int r = cell / cols;
    const int c = cell % cols;
    try {
      JobSpec job = base;
      set_parameter(job, name1, grid1[r]);
      if (!name2.empty()) set_parameter(job, name2, grid2[c]);
      out.fidelity(r, c) = run_fidelity(job);
    } catch (const std::exception& e) {
      messages[cell] = e.what();
    }
  });
  for (int cell = 0; cell < rows * cols; ++cell) {
    if (!messages[cell].empty()) out.errors.push_back({cell / cols, cell % cols, messages[cell]});
  }
  return out;
}

}  // namespace

SweepResult sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  if (spec.axis2) {
    return run_grid(spec.base, spec.axis1.name, spec.axis1.values(), spec.axis2->name, spec.axis2->values(), workers);
  }
  return run_grid(spec.base, spec.axis1.name, spec.axis1.values(), "", {0.0}, workers);
}

double ScanResult::drop_at(double deviation) const {
  for (std::size_t i = 0; i < deviations.size(); ++i) {
    if (std::abs(deviations[i] - deviation) < 1e-12) return baseline_fidelity - fidelities[i];
  }
  throw std::out_of_range("deviation not on the scan grid");
}

ScanResult robustness_scan(const JobSpec& base, const std::string& parameter, const std::vector<double>& deviations,
                           int workers) {
  base.validate();
  if (deviations.empty()) throw std::invalid_argument("robustness_scan: empty deviation grid");
  ScanResult out;
  out.protocol = base.protocol;
  out.base = base;
  out.parameter = parameter;
  out.baseline_value = get_parameter(base, parameter);
  out.deviations = deviations;
  out.fidelities.assign(deviations.size(), kNaN);
  std::vector<std::string> messages(deviations.size() + 1);

  // Index 0 is the unperturbed baseline.
  std::vector<double> values(deviations.size() + 1);
  parallel_for(static_cast<int>(values.size()), workers, [&](int i) {
    try {
      JobSpec job = base;
      if (i > 0) set_parameter(job, parameter, out.baseline_value * (1.0 + deviations[i - 1]));
      values[i] = run_fidelity(job);
    } catch (const std::exception& e) {
      values[i] = kNaN;
      messages[i] = e.what();
    }
  });
  if (!messages[0].empty()) throw std::runtime_error("baseline run failed: " + messages[0]);
  out.baseline_fidelity = values[0];
  for (std::size_t i = 0; i < deviations.size(); ++i) {
    out.fidelities[i] = values[i + 1];
    if (!messages[i + 1].empty()) out.errors.push_back({static_cast<int>(i), 0, messages[i + 1]});
  }
  return out;
}

SweepResult decoherence_map(const JobSpec& base, const std::vector<double>& gamma_grid,
                            const std::vector<double>& kappa_grid, int workers) {
  base.validate();
  if (gamma_grid.empty() || kappa_grid.empty()) throw std::invalid_argument("decoherence_map: empty grid");
  for (double g : gamma_grid) {
    if (g < 0.0) throw std::invalid_argument("decoherence_map: negative gamma");
  }
  for (double k : kappa_grid) {
    if (k < 0.0) throw std::invalid_argument("decoherence_map: negative kappa");
  }
  return run_grid(base, "gamma", gamma_grid, "kappa", kappa_grid, workers);
}

JobSpec shortcut_robustness_baseline() {
  JobSpec j = JobSpec::defaults(Protocol::Shortcut);
  j.cutoff = 40.0;
  return j;
}

}  // namespace wstate
