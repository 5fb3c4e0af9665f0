#pragma once

/*
 * Named simulation scenarios behind the command-line front end: config
 * assembly (defaults < config file < explicit overrides), validation,
 * trajectory runs with deterministic CSV/JSON output, conservation audits,
 * closed-form comparison and the convergence study.
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "suslov/modeln.hpp"
#include "suslov/reference.hpp"
#include "suslov/types.hpp"

namespace suslov::scenario {

inline constexpr const char* kVersion = "1.0.0";

enum class Mode { sim3, simN, closedform, conserve, convergence, figures };
enum class Format { csv, json };

struct ScenarioConfig {
    Mode mode = Mode::sim3;
    std::optional<Inertia3> inertia;
    std::optional<nd::NDInertia> nd_inertia;
    std::vector<double> omega0;  // 2 entries for 3D modes, n-1 for simN
    double epsilon = 0.0;
    long steps = 0;
    Format format = Format::csv;
    std::string out;  // defaulted from the mode when empty
    std::optional<int> figure;
};

struct RunSummary {
    long steps_completed = 0;
    double max_F_drift = 0.0;  // relative to the initial value
    double final_constraint_residual = 0.0;
    bool pole_encountered = false;
    double wall_time = 0.0;  // seconds; reported, never written to files
};

struct CompareSummary {
    long rows = 0;
    double max_abs_diff = 0.0;
    bool pole_encountered = false;
};

struct ConvergenceSummary {
    reference::ConvergenceReport control;  // forward Euler, expected order 1
    reference::ConvergenceReport hk;       // discrete flow, expected order 2
};

// Fields a config file or command-line flags may supply; unset means
// "leave alone".  nd_* only ever come from a file.
struct Overrides {
    std::optional<Mode> mode;
    std::optional<double> epsilon;
    std::optional<long> steps;
    std::optional<std::vector<double>> inertia;  // I1,I2,I13,I23[,I3]
    std::optional<std::vector<double>> omega0;
    std::optional<int> figure;
    std::optional<Format> format;
    std::optional<std::string> out;
    std::optional<int> nd_n;
    std::optional<std::vector<double>> nd_diag;
    std::optional<std::vector<double>> nd_off;
};

Mode parse_mode(const std::string& name);      // ConfigError on unknown names
Format parse_format(const std::string& name);  // likewise

// Published parameter sets 1..4 (step 0.2, 0.2, 0.02, 1 with their inertia
// tensors), initial state (1, 1), 5000 steps.  Throws UnknownFigure.
ScenarioConfig preset(int figure_id);

// Flat key=value file; '#' comments and blank lines ignored.  Unknown keys
// are ConfigError, unreadable files IoError.
std::map<std::string, std::string> parse_config_file(const std::string& path);
Overrides overrides_from_kv(const std::map<std::string, std::string>& kv);

// Assemble a validated config for the given mode: figure presets first,
// then the file, then explicit flags.  Throws ConfigError on missing,
// contradictory or out-of-range fields.
ScenarioConfig build_config(Mode mode, const Overrides& file, const Overrides& flags);

void validate(const ScenarioConfig& config);

// Execute any validated scenario, writing its output file.  A pole hit
// mid-run stops the trajectory, keeps the rows so far and sets
// pole_encountered.  Identical configs produce byte-identical files.
RunSummary run(const ScenarioConfig& config);

// Trajectory run reporting conservation only.  For simN the drift column
// tracks the kinetic-energy candidate (reported, not asserted; see
// nd_candidate_drifts for all candidates).
RunSummary audit_conservation(const ScenarioConfig& config);

// Relative drifts of candidate conserved quantities along a simN run.
std::vector<std::pair<std::string, double>> nd_candidate_drifts(const ScenarioConfig& config);

// Iterated map against the fitted closed form, row by row.
CompareSummary compare_closedform(const ScenarioConfig& config);

// Order-of-accuracy study: forward-Euler control and the discrete flow
// against tight fixed-step reference solutions on a halving step ladder.
ConvergenceSummary convergence_study(const ScenarioConfig& config);

// One-line JSON rendering of a summary (stdout surface of the CLI).
std::string summary_json(const RunSummary& summary);

}  // namespace suslov::scenario
