#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "qubvp/errors.hpp"
#include "qubvp/models.hpp"
#include "qubvp/refine.hpp"

namespace qubvp::cli {

namespace {

GridMap make_map(const RunConfig& cfg) {
    return cfg.map == MapKind::Logarithmic ? GridMap::logarithmic(cfg.c) : GridMap::algebraic(cfg.c);
}

NewtonConfig newton_config(const RunConfig& cfg) {
    NewtonConfig n;
    n.tol = cfg.tol;
    n.max_iter = cfg.max_iter;
    n.damping = cfg.damping;
    return n;
}

std::string number(double v, bool full, int decimals) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return full ? fmt::format("{:.17g}", v) : fmt::format("{:.{}f}", v, decimals);
}

std::string beta_label(double beta) { return fmt::format("{:.10g}", beta); }

// Profiles and sweep tables print 7 decimals, ladders 9.
constexpr int kTableDecimals = 7;
constexpr int kLadderDecimals = 9;

/// Where the summary goes: stdout unless stdout already carries the table.
std::ostream& summary_stream(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return cfg.output == "-" ? err : out;
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError(fmt::format("cannot write output file '{}'", cfg.output));
    file << text;
    if (!file) throw ConfigError(fmt::format("failed writing output file '{}'", cfg.output));
}

SweepRow solve_one(double beta, const Mesh& mesh, const NewtonConfig& ncfg) {
    SweepRow row;
    row.beta = beta;
    row.wall_shear = std::nan("");
    try {
        const SolutionGrid sol = newton_solve(models::mhd_system(beta), mesh,
                                              models::mhd_initial_guess().sample(mesh), ncfg);
        row.wall_shear = models::wall_shear(sol);
        row.iterations = sol.iterations;
        row.converged = sol.converged;
    } catch (const LinearSolveError& e) {
        row.iterations = e.iteration();
    } catch (const DivergenceError& e) {
        row.iterations = e.iteration();
    } catch (const EvaluationError&) {
    }
    return row;
}

}  // namespace

std::string format_table(OutputFormat format, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    if (format != OutputFormat::Human) {
        const char* sep = format == OutputFormat::Csv ? "," : "\t";
        out += fmt::format("{}\n", fmt::join(header, sep));
        for (const auto& row : rows) out += fmt::format("{}\n", fmt::join(row, sep));
        return out;
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size() && j < width.size(); ++j) {
            width[j] = std::max(width[j], row[j].size());
        }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j > 0) line += "  ";
            line += fmt::format("{:>{}}", cells[j], width[j]);
        }
        out += line + "\n";
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        check(cfg);
        const Mesh mesh = Mesh::build(make_map(cfg), cfg.N, cfg.weights);
        const double beta = cfg.beta_start;
        const SolutionGrid sol = newton_solve(models::mhd_system(beta), mesh,
                                              models::mhd_initial_guess().sample(mesh),
                                              newton_config(cfg));

        std::vector<std::vector<std::string>> rows;
        rows.reserve(mesh.node_count());
        const auto nodes = mesh.nodes();
        for (int n = 0; n <= mesh.intervals(); ++n) {
            const bool inf_node = n == mesh.intervals();
            rows.push_back({std::to_string(n), number(mesh.xi(n), cfg.full_precision, kTableDecimals),
                            inf_node ? "inf" : number(nodes[static_cast<std::size_t>(n)], cfg.full_precision, kTableDecimals),
                            number(sol.states(n, 0), cfg.full_precision, kTableDecimals),
                            number(sol.states(n, 1), cfg.full_precision, kTableDecimals),
                            number(sol.states(n, 2), cfg.full_precision, kTableDecimals)});
        }
        write_output(cfg, format_table(cfg.format, {"n", "xi", "x", "u1", "u2", "u3"}, rows), out);

        std::ostream& summary = summary_stream(cfg, out, err);
        summary << fmt::format("beta {}\n", beta_label(beta));
        summary << fmt::format("wall_shear {:.15f}\n", models::wall_shear(sol));
        summary << fmt::format("iterations {}\n", sol.iterations);
        summary << fmt::format("converged {}\n", sol.converged);
        summary << fmt::format("update_norm {:.3e}\n", sol.final_update_norm);
        if (!sol.converged) {
            err << fmt::format("error: Newton did not converge in {} iterations (last update {:.3e})\n",
                               sol.iterations, sol.final_update_norm);
            return kNonConvergence;
        }
        return kSuccess;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kNonConvergence;
    }
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
    check(cfg);
    const Mesh mesh = Mesh::build(make_map(cfg), cfg.N, cfg.weights);
    const NewtonConfig ncfg = newton_config(cfg);
    const std::vector<double> betas = beta_values(cfg);

    std::vector<SweepRow> rows(betas.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < betas.size(); i = next++) rows[i] = solve_one(betas[i], mesh, ncfg);
    };

    unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(betas.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    return rows;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<SweepRow> rows = run_sweep(cfg);
        std::vector<std::vector<std::string>> cells;
        int failed = 0;
        for (const SweepRow& r : rows) {
            cells.push_back({beta_label(r.beta), number(r.wall_shear, cfg.full_precision, kTableDecimals),
                             std::to_string(r.iterations), r.converged ? "true" : "false"});
            if (!r.converged) {
                ++failed;
                err << fmt::format("error: beta {} did not converge\n", beta_label(r.beta));
            }
        }
        write_output(cfg, format_table(cfg.format, {"beta", "wall_shear", "iterations", "converged"}, cells),
                     out);
        summary_stream(cfg, out, err) << fmt::format("rows {}\nfailed {}\n", rows.size(), failed);
        return failed == 0 ? kSuccess : kNonConvergence;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
}

int cmd_extrapolate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        check(cfg);
        if (!cfg.richardson) {
            throw ConfigError("extrapolate needs richardson_n0 / richardson_levels (config keys or flags)");
        }
        const RichardsonSettings& rs = *cfg.richardson;
        const std::vector<double> orders =
            rs.orders.empty() ? default_orders(static_cast<std::size_t>(rs.levels)) : rs.orders;

        const std::vector<SolutionGrid> levels =
            continuation_solve(models::mhd_system(cfg.beta_start), make_map(cfg), rs.n0, rs.levels,
                               models::mhd_initial_guess(), newton_config(cfg), cfg.weights);
        const RichardsonLadder ladder = richardson_ladder(levels, models::wall_shear, orders);

        std::vector<std::string> header{"N"};
        for (std::size_t k = 0; k < ladder.levels(); ++k) header.push_back(fmt::format("U_{}", k));
        const std::string blank = cfg.format == OutputFormat::Human ? "---" : "";
        std::vector<std::vector<std::string>> rows;
        for (std::size_t g = 0; g < ladder.levels(); ++g) {
            std::vector<std::string> row{std::to_string(ladder.grid_sizes[g])};
            for (std::size_t k = 0; k < ladder.levels(); ++k) {
                row.push_back(k <= g ? number(ladder.values[g][k], cfg.full_precision, kLadderDecimals) : blank);
            }
            rows.push_back(std::move(row));
        }
        write_output(cfg, format_table(cfg.format, header, rows), out);

        std::ostream& summary = summary_stream(cfg, out, err);
        summary << fmt::format("beta {}\n", beta_label(cfg.beta_start));
        std::vector<int> iterations;
        for (const SolutionGrid& s : levels) iterations.push_back(s.iterations);
        summary << fmt::format("iterations {}\n", fmt::join(iterations, ","));
        if (!ladder.orders.empty()) summary << fmt::format("orders {}\n", fmt::join(ladder.orders, ","));
        if (ladder.levels() >= 3) {
            const auto p = observed_order(ladder.values[0][0], ladder.values[1][0], ladder.values[2][0]);
            summary << (p ? fmt::format("observed_order {:.4f}\n", *p) : std::string("observed_order undefined\n"));
        }
        summary << fmt::format("benchmark {}\n", number(ladder.best(), cfg.full_precision, kLadderDecimals));
        return kSuccess;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kNonConvergence;
    }
}

namespace {

struct CommonOptions {
    std::string config;
    std::string map;
    double c = 0.0;
    int N = 0;
    double tol = 0.0;
    double beta = 0.0;
    double beta_start = 0.0;
    double beta_stop = 0.0;
    double beta_step = 0.0;
    int r_n0 = 0;
    int r_levels = 0;
    std::string r_orders;
    std::string output;
    std::string format;
    std::string weights;
    bool full_precision = false;
    int max_iter = 0;
    double damping = 0.0;
    int threads = 0;
    bool dump_config = false;

    CLI::Option* o_config = nullptr;
    CLI::Option* o_map = nullptr;
    CLI::Option* o_c = nullptr;
    CLI::Option* o_N = nullptr;
    CLI::Option* o_tol = nullptr;
    CLI::Option* o_beta = nullptr;
    CLI::Option* o_beta_start = nullptr;
    CLI::Option* o_beta_stop = nullptr;
    CLI::Option* o_beta_step = nullptr;
    CLI::Option* o_r_n0 = nullptr;
    CLI::Option* o_r_levels = nullptr;
    CLI::Option* o_r_orders = nullptr;
    CLI::Option* o_output = nullptr;
    CLI::Option* o_format = nullptr;
    CLI::Option* o_weights = nullptr;
    CLI::Option* o_max_iter = nullptr;
    CLI::Option* o_damping = nullptr;
    CLI::Option* o_threads = nullptr;

    void attach(CLI::App* app) {
        o_config = app->add_option("--config", config, "Key-value config file (flags override it)");
        o_map = app->add_option("--map", map, "Grid map: log or alg");
        o_c = app->add_option("--c", c, "Map control parameter c > 0");
        o_N = app->add_option("--N", N, "Number of intervals");
        o_tol = app->add_option("--tol", tol, "Newton tolerance on the mean absolute update");
        o_beta = app->add_option("--beta", beta, "Single magnetic parameter (sets start = stop)");
        o_beta_start = app->add_option("--beta-start", beta_start, "First beta");
        o_beta_stop = app->add_option("--beta-stop", beta_stop, "Last beta (inclusive)");
        o_beta_step = app->add_option("--beta-step", beta_step, "Beta increment");
        o_r_n0 = app->add_option("--richardson-n0", r_n0, "Coarsest Richardson grid N0");
        o_r_levels = app->add_option("--richardson-levels", r_levels, "Number of doublings G");
        o_r_orders = app->add_option("--richardson-orders", r_orders, "Comma-separated exponents p_k");
        o_output = app->add_option("-o,--output", output, "Output path, '-' for stdout");
        o_format = app->add_option("--format", format, "csv, tsv or human");
        o_weights = app->add_option("--weights", weights, "Midpoint weights: nodal or quarter");
        app->add_flag("--full-precision", full_precision, "Print 17 significant digits");
        o_max_iter = app->add_option("--max-iter", max_iter, "Newton iteration cap");
        o_damping = app->add_option("--damping", damping, "Step shrink factor in (0,1]; 1 = plain Newton");
        o_threads = app->add_option("--threads", threads, "Sweep worker threads (0 = all cores)");
        app->add_flag("--dump-config", dump_config, "Print the effective config file and exit");
    }

    RunConfig resolve() const {
        RunConfig cfg;
        if (o_config->count()) cfg = load_config(config);
        if (o_map->count()) cfg.map = parse_map(map);
        if (o_c->count()) cfg.c = c;
        if (o_N->count()) cfg.N = N;
        if (o_tol->count()) cfg.tol = tol;
        if (o_beta_start->count()) cfg.beta_start = beta_start;
        if (o_beta_stop->count()) cfg.beta_stop = beta_stop;
        if (o_beta_step->count()) cfg.beta_step = beta_step;
        if (o_beta->count()) cfg.beta_start = cfg.beta_stop = beta;
        if (o_r_n0->count() || o_r_levels->count() || o_r_orders->count()) {
            if (!cfg.richardson) cfg.richardson.emplace();
            if (o_r_n0->count()) cfg.richardson->n0 = r_n0;
            if (o_r_levels->count()) cfg.richardson->levels = r_levels;
            if (o_r_orders->count()) cfg.richardson->orders = parse_orders(r_orders);
        }
        if (o_output->count()) cfg.output = output;
        if (o_format->count()) cfg.format = parse_format(format);
        if (o_weights->count()) cfg.weights = parse_weights(weights);
        cfg.full_precision = full_precision;
        if (o_max_iter->count()) cfg.max_iter = max_iter;
        if (o_damping->count()) cfg.damping = damping;
        if (o_threads->count()) cfg.threads = threads;
        return cfg;
    }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boundary value problems on [0, inf) with quasi-uniform grids (MHD boundary layer)"};
    app.require_subcommand(1);

    CommonOptions solve_opts;
    CommonOptions sweep_opts;
    CommonOptions extra_opts;
    CLI::App* solve = app.add_subcommand("solve", "Solve at one beta and write the node profile");
    CLI::App* sweep = app.add_subcommand("sweep", "Wall shear over a beta range");
    CLI::App* extra = app.add_subcommand("extrapolate", "Grid doubling with Richardson extrapolation");
    solve_opts.attach(solve);
    sweep_opts.attach(sweep);
    extra_opts.attach(extra);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kConfigError;
    }

    const CommonOptions& opts = solve->parsed() ? solve_opts : sweep->parsed() ? sweep_opts : extra_opts;
    RunConfig cfg;
    try {
        cfg = opts.resolve();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    if (opts.dump_config) {
        out << serialize_config(cfg);
        return kSuccess;
    }
    if (solve->parsed()) return cmd_solve(cfg, out, err);
    if (sweep->parsed()) return cmd_sweep(cfg, out, err);
    return cmd_extrapolate(cfg, out, err);
}

}  // namespace qubvp::cli
