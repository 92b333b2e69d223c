#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zenolab/linalg.hpp"

namespace zenolab {

enum class ExperimentKind { mixing, zeno, damping, binomial, simplex };

std::string to_string(ExperimentKind kind);

/// One entry of `states.list`.
struct StateSpec {
  enum class Type { vacuum, fock, coherent, random } type = Type::vacuum;
  long level = 0;            // fock:<level>
  Complex amplitude{0, 0};   // coherent:<re>[+/-<im>i]
  std::uint64_t index = 0;   // random:<index>
  std::string id;            // original token, used as state_id
};

StateSpec parse_state_spec(const std::string& token);

struct GridSpec {
  double start = 8;
  double factor = 2;
  int count = 10;
};

struct ExperimentConfig {
  std::string id;
  ExperimentKind kind = ExperimentKind::zeno;
  long dimension = 24;
  std::uint64_t seed = 0;
  double t = 1.0;

  // [channel]
  std::string channel_type = "attenuator";  // attenuator | random | gapped
  Complex eta{0.5, 0.0};
  long kraus_rank = 2;
  double gap = 0.5;  // spectral gap of the `gapped` matrix

  // [generator]
  std::string hamiltonian = "drive";  // none | drive | number | random
  double omega = 0.5;
  double dephasing = 0.0;

  GridSpec grid;
  std::vector<StateSpec> states;

  // [tolerance]
  double tail_mass = 1e-12;

  // [simplex]
  long k_max = 8;
  long n_max = 1000;

  std::string output_path;  // empty: <id>.csv

  /// Integer grid for n-sweeps (rounded, must be strictly increasing).
  std::vector<long> integer_grid() const;
  /// Real grid for gamma sweeps.
  std::vector<double> real_grid() const;
};

/// Parses an INI document. Unknown sections or keys, malformed values and
/// violated constraints raise ConfigError naming `section.key`.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ReportRow {
  std::string experiment_id;
  std::string kind;
  double parameter = 0.0;
  std::string state_id;
  double error = 0.0;
  std::optional<double> bound;
  std::optional<double> fitted_C;
  std::optional<double> fitted_p;
  double wall_time_ms = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ReportRow> rows;  // sorted by (parameter, state_id)
  std::vector<std::string> notes;  // human-readable summary lines
};

/// Runs an experiment. Throws InvariantViolation for breaches detected during
/// the run (e.g. a coherent state whose truncation tail exceeds the budget).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

inline constexpr const char* kCsvHeader =
    "experiment_id,kind,parameter,state_id,error,bound,fitted_C,fitted_p,wall_time_ms";

std::string format_csv(const std::vector<ReportRow>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

/// Writes a matplotlib script next to `csv_path` that plots error and bound
/// against parameter on log-log axes, one series per state. Returns the
/// script path. Throws ConfigError if the CSV does not exist.
std::filesystem::path emit_plot_script(const std::filesystem::path& csv_path);

struct Preset {
  std::string name;
  std::string description;
  std::string config;  // INI text
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

}  // namespace zenolab
