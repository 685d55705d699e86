#include "wstate/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "wstate/config.hpp"
#include "wstate/export.hpp"

namespace wstate {

namespace fs = std::filesystem;

namespace {

struct Settings {
  fs::path out;
  int workers = 1;
  std::optional<int> steps;
  int grid = 21;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string csv(const std::function<void(std::ostream&)>& writer) {
  std::ostringstream ss;
  writer(ss);
  return ss.str();
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_file(path, j.dump(2) + "\n"); }

JobSpec with_steps(JobSpec job, const Settings& s) {
  if (s.steps) job.n_steps = *s.steps;
  return job;
}

void emit_run(const fs::path& dir, const JobSpec& job, const ProtocolResult& r,
              const std::vector<std::string>& columns = {}, const std::string& name = "trajectory.csv") {
  write_file(dir / name, csv([&](std::ostream& os) { write_trajectory_csv(os, r, columns); }));
  write_json(dir / "result.json", result_json(r, job, name));
}

void emit_sweep(const fs::path& dir, const SweepResult& r) {
  write_file(dir / "matrix.csv", csv([&](std::ostream& os) { write_matrix_csv(os, r); }));
  write_json(dir / "meta.json", sweep_meta_json(r));
  if (!r.errors.empty()) write_json(dir / "errors.json", errors_json(r.errors));
}

void emit_scan(const fs::path& dir, const ScanResult& r) {
  write_file(dir / "curve.csv", csv([&](std::ostream& os) { write_scan_csv(os, r); }));
  write_json(dir / "meta.json", scan_meta_json(r));
  if (!r.errors.empty()) write_json(dir / "errors.json", errors_json(r.errors));
}

JobSpec adiabatic_job(double omega0, double tf) {
  JobSpec j = JobSpec::defaults(Protocol::Adiabatic);
  j.omega0 = omega0;
  j.tf = tf;
  return j;
}

JobSpec shortcut_job(double delta) {
  JobSpec j = JobSpec::defaults(Protocol::Shortcut);
  j.delta = delta;
  return j;
}

void run_and_emit(const fs::path& dir, const JobSpec& job, const std::vector<std::string>& columns) {
  emit_run(dir, job, run_job(job), columns);
}

void figure_sweep(const fs::path& dir, const Settings& s, const JobSpec& base, SweepAxis a1, SweepAxis a2) {
  a1.points = a2.points = s.grid;
  emit_sweep(dir, sweep(SweepSpec{with_steps(base, s), a1, a2}, s.workers));
}

void figure_decoherence(const fs::path& dir, const Settings& s, double delta) {
  const auto grid = linspace(0.0, 0.1, s.grid);
  emit_sweep(dir, decoherence_map(with_steps(shortcut_job(delta), s), grid, grid, s.workers));
}

void fig2(const fs::path& dir, const Settings&) {
  // t in units of tf, amplitudes in units of Omega0.
  const PulseSchedule p = stirap_schedule(StirapParams::with_defaults(1.0, 1.0));
  write_file(dir / "pulses.csv", csv([&](std::ostream& os) { write_pulse_csv(os, p, 0.0, 1.0, 400); }));
  write_json(dir / "meta.json", {{"figure", "fig2"}, {"time_unit", "tf"}, {"amplitude_unit", "omega0"},
                                 {"t0", 0.15}, {"tc", 0.2}, {"alpha", StirapParams{}.alpha}});
}

void fig3(const fs::path& dir, const Settings& s) {
  figure_sweep(dir, s, adiabatic_job(1.0, 80.0), {"omega0", 0.2, 2.0, 0}, {"tf", 10.0, 100.0, 0});
}

const std::vector<std::string> kFig4Columns{"psi1", "psi3", "psi5", "psi7"};

void fig4a(const fs::path& dir, const Settings& s) {
  run_and_emit(dir, with_steps(adiabatic_job(1.0, 40.0), s), kFig4Columns);
}

void fig4b(const fs::path& dir, const Settings& s) {
  run_and_emit(dir, with_steps(adiabatic_job(1.0, 80.0), s), kFig4Columns);
}

void fig4c(const fs::path& dir, const Settings& s) {
  run_and_emit(dir, with_steps(adiabatic_job(1.0, 40.0), s),
               {"dark_psi1", "dark_psi3", "dark_psi5", "dark_psi7", "psi1", "psi3", "psi5", "psi7"});
}

void fig5(const fs::path& dir, const Settings& s) {
  const JobSpec base = with_steps(JobSpec::defaults(Protocol::Zeno), s);
  emit_scan(dir, robustness_scan(base, "tf", linspace(-0.1, 0.1, s.grid), s.workers));
}

void fig6(const fs::path& dir, const Settings& s) {
  figure_sweep(dir, s, shortcut_job(3.0), {"delta", 0.5, 6.0, 0}, {"tf", 10.0, 60.0, 0});
}

void fig7a(const fs::path& dir, const Settings& s) {
  run_and_emit(dir, with_steps(shortcut_job(3.0), s), {"psi1", "psi5", "psi7"});
}

void fig7b(const fs::path& dir, const Settings& s) {
  run_and_emit(dir, with_steps(shortcut_job(3.0), s), {"psi3", "phi1"});
}

void fig7c(const fs::path& dir, const Settings& s) {
  const std::vector<std::pair<std::string, JobSpec>> jobs{
      {"shortcut", shortcut_job(3.0)},
      {"adiabatic", adiabatic_job(1.0, 80.0)},
      {"zeno", JobSpec::defaults(Protocol::Zeno)},
  };
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [name, spec] : jobs) {
    const JobSpec job = with_steps(spec, s);
    const ProtocolResult r = run_job(job);
    const std::string file = "fidelity_" + name + ".csv";
    write_file(dir / file, csv([&](std::ostream& os) { write_trajectory_csv(os, r, {"fidelity"}); }));
    summary[name] = result_json(r, job, file);
  }
  write_json(dir / "result.json", summary);
}

void fig8(const fs::path& dir, const Settings& s) {
  figure_sweep(dir, s, shortcut_robustness_baseline(), {"T", 36.0, 44.0, 0}, {"nu", 0.9, 1.1, 0});
}

void fig9a(const fs::path& dir, const Settings& s) { figure_decoherence(dir, s, 3.0); }
void fig9b(const fs::path& dir, const Settings& s) { figure_decoherence(dir, s, 1.0); }

using FigureFn = void (*)(const fs::path&, const Settings&);

const std::vector<std::pair<std::string, FigureFn>>& figure_table() {
  static const std::vector<std::pair<std::string, FigureFn>> table{
      {"fig2", fig2},   {"fig3", fig3},   {"fig4a", fig4a}, {"fig4b", fig4b}, {"fig4c", fig4c},
      {"fig5", fig5},   {"fig6", fig6},   {"fig7a", fig7a}, {"fig7b", fig7b}, {"fig7c", fig7c},
      {"fig8", fig8},   {"fig9a", fig9a}, {"fig9b", fig9b}};
  return table;
}

const char* kFigureHelp =
    "Figure ids:\n"
    "  fig2   STIRAP pulse shapes versus t/tf\n"
    "  fig3   adiabatic fidelity over omega0 in [0.2, 2] x tf in [10, 100]\n"
    "  fig4a  adiabatic populations, omega0 = 1, tf = 40\n"
    "  fig4b  adiabatic populations, omega0 = 1, tf = 80\n"
    "  fig4c  dark-state reference populations next to the tf = 40 run\n"
    "  fig5   Zeno fidelity versus relative change of tf (omega1 = 0.05)\n"
    "  fig6   shortcut fidelity over delta in [0.5, 6] x tf in [10, 60]\n"
    "  fig7a  shortcut populations of psi1, psi5, psi7 (delta = 3, tf = 35)\n"
    "  fig7b  shortcut intermediate populations of psi3 and phi1\n"
    "  fig7c  fidelity versus time for all three schemes\n"
    "  fig8   shortcut fidelity over T in [36, 44] x nu scale in [0.9, 1.1]\n"
    "  fig9a  shortcut fidelity over gamma, kappa in [0, 0.1], delta = 3\n"
    "  fig9b  same map with delta = 1\n";

RunConfig load_or_throw(const std::string& path, ConfigKind kind) {
  if (path.empty()) throw ConfigError("--config is required");
  return load_config(path, kind);
}

fs::path output_dir(const std::string& flag, const RunConfig& cfg, const std::string& fallback) {
  if (!flag.empty()) return flag;
  if (cfg.out) return *cfg.out;
  return fallback;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, _] : figure_table()) out.push_back(id);
    return out;
  }();
  return ids;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"W-state generation in cavity QED: adiabatic passage, Zeno dynamics and shortcut"};
  app.require_subcommand(1);
  app.footer(kFigureHelp);

  std::string out_dir;
  int workers = 1;
  int steps = 0;
  int grid = 21;
  std::string config_path;
  std::string figure_id;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--steps", steps, "Integrator step count override")->check(CLI::PositiveNumber);
  };

  auto* fig = app.add_subcommand("figure", "Write the data behind one figure");
  fig->add_option("id", figure_id, "Figure id")->required()->check(CLI::IsMember(figure_ids()));
  fig->add_option("--workers", workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  fig->add_option("--grid", grid, "Points per sweep axis")->check(CLI::PositiveNumber);
  fig->footer(kFigureHelp);
  add_common(fig);

  auto* run = app.add_subcommand("run", "Single protocol run from a config file");
  run->add_option("--config", config_path, "JSON config")->required();
  add_common(run);

  auto* sw = app.add_subcommand("sweep", "One- or two-axis parameter sweep from a config file");
  sw->add_option("--config", config_path, "JSON config")->required();
  sw->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  add_common(sw);

  auto* sc = app.add_subcommand("scan", "Relative-deviation robustness scan from a config file");
  sc->add_option("--config", config_path, "JSON config")->required();
  sc->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  add_common(sc);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Settings s;
  s.workers = workers;
  s.grid = grid;
  if (steps > 0) s.steps = steps;

  try {
    if (fig->parsed()) {
      s.out = out_dir.empty() ? fs::path("out") / figure_id : fs::path(out_dir);
      for (const auto& [id, fn] : figure_table()) {
        if (id == figure_id) fn(s.out, s);
      }
      out << "wrote " << figure_id << " to " << s.out.string() << "\n";
    } else if (run->parsed()) {
      const RunConfig cfg = load_or_throw(config_path, ConfigKind::Run);
      s.out = output_dir(out_dir, cfg, "out/run");
      const JobSpec job = with_steps(cfg.job, s);
      const ProtocolResult r = run_job(job);
      emit_run(s.out, job, r);
      out << "final fidelity " << format_number(r.final_fidelity) << "\n";
    } else if (sw->parsed()) {
      const RunConfig cfg = load_or_throw(config_path, ConfigKind::Sweep);
      s.out = output_dir(out_dir, cfg, "out/sweep");
      SweepSpec spec = *cfg.sweep;
      spec.base = with_steps(spec.base, s);
      const SweepResult r = sweep(spec, s.workers);
      emit_sweep(s.out, r);
      out << "wrote " << r.grid1.size() << "x" << r.grid2.size() << " matrix, " << r.errors.size()
          << " failed cells\n";
    } else if (sc->parsed()) {
      const RunConfig cfg = load_or_throw(config_path, ConfigKind::Scan);
      s.out = output_dir(out_dir, cfg, "out/scan");
      ScanSpec spec = *cfg.scan;
      const ScanResult r = robustness_scan(with_steps(spec.base, s), spec.parameter, spec.deviations, s.workers);
      emit_scan(s.out, r);
      out << "baseline fidelity " << format_number(r.baseline_fidelity) << "\n";
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SignViolation& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const IntegrationFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const EigenCrossing& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace wstate
