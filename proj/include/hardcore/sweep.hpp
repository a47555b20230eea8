#pragma once

// Command-line front end: single evaluations, mu1 sweeps, ellipse data, transient
// curves and oracle-vs-closed-form checks. Every run produces an ordered JSON record
// that is rendered either as JSON or as CSV.

#include "hardcore/scattering.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hardcore::cli {

using Record = nlohmann::ordered_json;

enum class Mode { Single, SweepMu, Ellipse, Transient, OracleCheck };
enum class Format { Csv, Json };

// Exit codes.
constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_io = 3;
constexpr int exit_oracle = 4;

constexpr double oracle_tolerance_bits = 1e-3;

struct SweepConfig {
    Mode mode = Mode::Single;

    // Mass content: either a fraction or a pair of raw masses (default mu1 = 1/4).
    std::optional<double> mu1;
    std::optional<double> mass1;
    std::optional<double> mass2;

    // Widths: sigma2^2 defaults to 1; sigma1^2 comes from --sigma1-sq or from the
    // ratio sigma1/sigma2 (default 10), never both.
    std::optional<double> sigma1_sq;
    std::optional<double> sigma2_sq;
    std::optional<double> ratio;

    double core_radius = 0.0;
    double momentum = 2.0;
    // Default 8 max(sigma1, sigma2) + a.
    std::optional<double> q1;
    std::optional<double> q2;

    // sweep-mu axis; points also sets the ellipse boundary count and the number of
    // automatic transient times.
    double mu_start = 0.01;
    double mu_stop = 0.99;
    std::optional<int> points;
    std::vector<double> times;

    int grid_n = 512;
    double grid_widths = 6.0;

    std::string out;
    Format format = Format::Csv;
};

/// The ScatterParams a config describes. Throws DomainError naming the violated constraint.
ScatterParams resolve_params(const SweepConfig &config);

Record run_single(const SweepConfig &config);
Record run_sweep_mu(const SweepConfig &config);
Record run_ellipse(const SweepConfig &config);
Record run_oracle_check(const SweepConfig &config);
Record run_transient(const SweepConfig &config);

Record run(const SweepConfig &config);

/// Serialize a run record; CSV uses 17 significant digits.
std::string render(const Record &record, Mode mode, Format format);

/// Parse arguments (argv[0] excluded), run, write output. Returns the process exit code.
int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err);

} // namespace hardcore::cli
