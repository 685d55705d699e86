#pragma once

// Flat JSON configuration documents for the CLI. Physical quantities are in
// units of lambda (times in 1/lambda).

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wstate/analysis.hpp"

namespace wstate {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::vector<std::string> keys = {})
      : std::runtime_error(message), keys_(std::move(keys)) {}
  [[nodiscard]] const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

struct ScanSpec {
  JobSpec base;
  std::string parameter;
  std::vector<double> deviations;
};

/// A parsed document. `job` is always set; `sweep` / `scan` only when the
/// corresponding keys are present.
struct RunConfig {
  JobSpec job;
  std::optional<SweepSpec> sweep;
  std::optional<ScanSpec> scan;
  std::optional<std::string> out;
};

enum class ConfigKind { Run, Sweep, Scan };

/// Rejects unknown keys (all of them are listed), wrong types and
/// out-of-range values, naming the offending key.
RunConfig parse_config(const nlohmann::json& doc, ConfigKind kind);
RunConfig parse_config_text(const std::string& text, ConfigKind kind);
RunConfig load_config(const std::filesystem::path& path, ConfigKind kind);

}  // namespace wstate
