#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/run_config.hpp"

namespace qubvp::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNonConvergence = 1,
    kConfigError = 2,
};

/// One row of a beta sweep.
struct SweepRow {
    double beta = 0.0;
    double wall_shear = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Formats rows as csv, tsv or space-aligned columns. Always LF line endings.
std::string format_table(OutputFormat format, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

/// Solves the MHD problem at beta_start and writes the node profile
/// (n, xi, x, u1, u2, u3), with x_N printed as `inf`.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Independent solves over the beta range; one row per beta in beta order.
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Continuation over the Richardson grids at beta_start and the extrapolation ladder.
int cmd_extrapolate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs the sweep solves (in parallel when cfg.threads allows) without writing anything.
std::vector<SweepRow> run_sweep(const RunConfig& cfg);

/// Full command line: `qubvp <solve|sweep|extrapolate> [options]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qubvp::cli
