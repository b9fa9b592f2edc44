#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qubvp/mesh.hpp"

namespace qubvp::cli {

enum class OutputFormat { Csv, Tsv, Human };

struct RichardsonSettings {
    int n0 = 100;
    int levels = 2;
    std::vector<double> orders;  // empty means p_k = 2(k+1)

    friend bool operator==(const RichardsonSettings&, const RichardsonSettings&) = default;
};

/// Everything a CLI run needs. Defaults: log map,
/// c = 2, N = 1000, TOL = 1e-8, beta from 0 to 2 in steps of 0.2.
struct RunConfig {
    // Keys persisted in the config file.
    MapKind map = MapKind::Logarithmic;
    double c = 2.0;
    int N = 1000;
    double tol = 1e-8;
    double beta_start = 0.0;
    double beta_stop = 2.0;
    double beta_step = 0.2;
    std::optional<RichardsonSettings> richardson;
    std::string output = "-";
    OutputFormat format = OutputFormat::Csv;

    // Command-line only.
    WeightRule weights = WeightRule::Nodal;
    bool full_precision = false;
    int max_iter = 50;
    double damping = 1.0;
    int threads = 0;  // 0 = hardware concurrency

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys and
/// malformed values raise ConfigError naming the line.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Writes every config-file key of `cfg`; parse_config reads it back unchanged.
std::string serialize_config(const RunConfig& cfg);

/// Range checks shared by every command. Throws ConfigError.
void check(const RunConfig& cfg);

/// beta_start, beta_start + step, ... up to beta_stop (inclusive within 1e-9 steps).
std::vector<double> beta_values(const RunConfig& cfg);

MapKind parse_map(std::string_view text);
OutputFormat parse_format(std::string_view text);
WeightRule parse_weights(std::string_view text);
std::vector<double> parse_orders(std::string_view text);

std::string_view to_string(OutputFormat format) noexcept;

}  // namespace qubvp::cli
