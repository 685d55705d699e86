#include "wstate/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wstate {

namespace {

const std::set<std::string> kRunKeys{"protocol", "n_atoms", "omega0", "alpha", "tf",    "delta",
                                     "correction", "nu",    "T",      "omega1", "branch", "gamma",
                                     "kappa",    "steps",   "store_every", "out"};
const std::set<std::string> kSweepKeys{"axis1", "axis1_min", "axis1_max", "axis1_points",
                                       "axis2", "axis2_min", "axis2_max", "axis2_points"};
const std::set<std::string> kScanKeys{"parameter", "rel_min", "rel_max", "points"};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

double number(const nlohmann::json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number", {key});
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("key '" + key + "' must be finite", {key});
  return x;
}

int integer(const nlohmann::json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError("key '" + key + "' must be an integer", {key});
  return v.get<int>();
}

std::string text(const nlohmann::json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_string()) throw ConfigError("key '" + key + "' must be a string", {key});
  return v.get<std::string>();
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("key '" + key + "' " + what, {key});
}

void optional_number(const nlohmann::json& doc, const std::string& key, double& target) {
  if (doc.contains(key)) target = number(doc, key);
}

// Maps the first word of a validation message ("tf must be > 0") back to its key.
[[noreturn]] void rethrow_validation(const std::exception& e) {
  std::string msg = e.what();
  std::string key = msg.substr(0, msg.find(' '));
  throw ConfigError(msg, {key});
}

JobSpec parse_job(const nlohmann::json& doc) {
  if (!doc.contains("protocol")) throw ConfigError("missing required key 'protocol'", {"protocol"});
  Protocol p;
  try {
    p = protocol_from_string(text(doc, "protocol"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("key 'protocol': ") + e.what(), {"protocol"});
  }
  JobSpec job = JobSpec::defaults(p);
  if (doc.contains("n_atoms")) job.n_atoms = integer(doc, "n_atoms");
  optional_number(doc, "omega0", job.omega0);
  optional_number(doc, "alpha", job.alpha);
  if (doc.contains("tf")) {
    job.tf = number(doc, "tf");
    require(*job.tf > 0.0, "tf", "must be > 0");
    // For the Zeno scheme tf is the evolution time.
    if (p == Protocol::Zeno) job.cutoff = job.tf;
  }
  optional_number(doc, "delta", job.delta);
  optional_number(doc, "correction", job.correction);
  optional_number(doc, "nu", job.nu_scale);
  if (doc.contains("T")) {
    job.cutoff = number(doc, "T");
    require(*job.cutoff > 0.0, "T", "must be > 0");
  }
  optional_number(doc, "omega1", job.omega1);
  if (doc.contains("branch")) job.branch = integer(doc, "branch");
  optional_number(doc, "gamma", job.gamma);
  optional_number(doc, "kappa", job.kappa);
  if (doc.contains("steps")) job.n_steps = integer(doc, "steps");
  if (doc.contains("store_every")) job.store_every = integer(doc, "store_every");

  require(job.n_atoms >= 2, "n_atoms", "must be >= 2");
  require(job.gamma >= 0.0, "gamma", "must be >= 0");
  require(job.kappa >= 0.0, "kappa", "must be >= 0");
  require(job.n_steps >= 1, "steps", "must be >= 1");
  require(job.store_every >= 0, "store_every", "must be >= 0");
  try {
    job.validate();
  } catch (const std::invalid_argument& e) {
    rethrow_validation(e);
  }
  return job;
}

SweepAxis parse_axis(const nlohmann::json& doc, const std::string& prefix) {
  for (const char* suffix : {"_min", "_max", "_points"}) {
    const std::string key = prefix + suffix;
    if (!doc.contains(key)) throw ConfigError("missing required key '" + key + "'", {key});
  }
  SweepAxis axis{text(doc, prefix), number(doc, prefix + "_min"), number(doc, prefix + "_max"),
                 integer(doc, prefix + "_points")};
  require(axis.points >= 1, prefix + "_points", "must be >= 1 (empty grid)");
  try {
    axis.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("key '") + prefix + "': " + e.what(), {prefix});
  }
  return axis;
}

}  // namespace

RunConfig parse_config(const nlohmann::json& doc, ConfigKind kind) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  std::set<std::string> allowed = kRunKeys;
  if (kind == ConfigKind::Sweep) allowed.insert(kSweepKeys.begin(), kSweepKeys.end());
  if (kind == ConfigKind::Scan) allowed.insert(kScanKeys.begin(), kScanKeys.end());
  std::vector<std::string> unknown;
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.count(key)) unknown.push_back(key);
  }
  if (!unknown.empty()) throw ConfigError("unknown configuration keys: " + join(unknown), unknown);

  RunConfig cfg;
  cfg.job = parse_job(doc);
  if (doc.contains("out")) cfg.out = text(doc, "out");

  if (kind == ConfigKind::Sweep) {
    if (!doc.contains("axis1")) throw ConfigError("missing required key 'axis1'", {"axis1"});
    SweepSpec spec{cfg.job, parse_axis(doc, "axis1"), std::nullopt};
    if (doc.contains("axis2")) spec.axis2 = parse_axis(doc, "axis2");
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), {"axis1"});
    }
    cfg.sweep = spec;
  }
  if (kind == ConfigKind::Scan) {
    for (const char* key : {"parameter", "rel_min", "rel_max", "points"}) {
      if (!doc.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'", {key});
    }
    ScanSpec spec{cfg.job, text(doc, "parameter"), {}};
    const double lo = number(doc, "rel_min");
    const double hi = number(doc, "rel_max");
    const int n = integer(doc, "points");
    require(n >= 1, "points", "must be >= 1 (empty grid)");
    require(n == 1 || hi > lo, "rel_max", "must exceed rel_min");
    require(lo > -1.0, "rel_min", "must be > -1");
    const auto& reg = parameter_registry();
    require(std::find(reg.begin(), reg.end(), spec.parameter) != reg.end(), "parameter", "is not a known parameter");
    require(parameter_applies(cfg.job.protocol, spec.parameter), "parameter",
            "does not apply to the " + to_string(cfg.job.protocol) + " protocol");
    spec.deviations = linspace(lo, hi, n);
    cfg.scan = spec;
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text_doc, ConfigKind kind) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text_doc);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc, kind);
}

RunConfig load_config(const std::filesystem::path& path, ConfigKind kind) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read configuration file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), kind);
}

}  // namespace wstate
