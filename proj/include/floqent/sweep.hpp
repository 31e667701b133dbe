// sweep.hpp — configuration-driven parameter-plane sweeps with a deterministic
// worker pool, CSV/JSON emission, and plot-script generation

#pragma once

#include "floqent/resonance.hpp"
#include "floqent/single_qubit.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace floqent {

struct AxisSpec {
    std::string param;  // F | F_prime | omega0 | C
    double min = 0.0;
    double max = 1.0;
    int points = 2;
};

struct SweepConfig {
    // system
    int n_qubits = 2;
    double omega = 1.0;
    double omega0 = 1.0;
    std::vector<double> beta;         // per-qubit splitting weights; empty = 1
    std::vector<double> drive_scale;  // per-qubit drive weights; empty = 1
    std::string drive_kind = "monochromatic";
    double F = 0.0;
    double F_prime = 0.0;
    int sawtooth_harmonics = 64;
    std::string coupling_kind = "exchange";
    double C = 0.0;
    std::vector<double> alpha;  // per-pair weights in (a,b) lexicographic order; empty = 1

    // grid
    AxisSpec x{"F", 0.0, 3.0, 16};
    AxisSpec y{"omega0", 0.0, 3.0, 16};

    // task
    std::string task = "sweep";  // sweep | spectrum | predict | single-qubit | validate

    // numerics
    int margin = 4;
    bool adaptive = false;
    int n_samples = 128;
    int steps = 2048;
    double tolerance = 1e-8;
    int workers = 1;
    int max_failures = 0;
    std::string subspace = "auto";  // auto | full | symmetric
    int denom = 4;                  // corridor denominator 2(i-j)

    // output
    std::string out_dir = "out";
    std::string format = "csv";  // csv | json
    bool plot = false;
    std::uint64_t seed = 0;  // reserved

    void validate() const;
    nlohmann::json to_json() const;
    static SweepConfig from_json(const nlohmann::json& j);
    static SweepConfig load(const std::filesystem::path& file);

    std::string canonical_string() const;  // sorted-key serialization
    std::uint64_t hash() const;            // FNV-1a 64 of the canonical string

    QubitSystem system_at(double x_value, double y_value) const;
    SubspaceBasis subspace_basis(const QubitSystem& system) const;
    std::vector<double> axis_values(const AxisSpec& axis) const;
};

struct SweepRow {
    double x = 0.0;
    double y = 0.0;
    std::vector<double> values;
    bool ok = true;
};

struct SweepResult {
    SweepConfig config;
    std::vector<std::string> columns;  // includes x, y and the trailing status
    std::vector<SweepRow> rows;        // lexicographic (x, y) order
    int failures = 0;
    double wall_seconds = 0.0;
};

/// Column names for a task (excluding x, y, status).
std::vector<std::string> task_columns(const SweepConfig& config);

/// Execute the task over the grid with `workers` threads. Per-point failures
/// become NaN rows; the sweep itself never aborts.
SweepResult run(const SweepConfig& config);

/// Shortest round-trip decimal formatting (the CSV float format).
std::string format_double(double v);

std::string to_csv(const SweepResult& result);
std::string to_json_rows(const SweepResult& result);

/// Write results.csv / results.json plus meta.json (and plot.py when asked)
/// under config.out_dir. With resume = true, rows present in an existing
/// results.csv are reused verbatim and only missing or failed rows are
/// recomputed. Returns the process exit code (0, or 3 when more than
/// max_failures points failed).
int run_to_disk(const SweepConfig& config, bool resume = false);

/// Standalone plot-script emission for results already on disk.
void emit_plot_script(const SweepResult& result, const std::filesystem::path& path);

}  // namespace floqent
