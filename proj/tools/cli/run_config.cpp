#include "cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "qubvp/errors.hpp"

namespace qubvp::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view key) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, text));
    }
    return v;
}

int parse_int(std::string_view text, std::string_view key) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
    }
    return v;
}

RichardsonSettings& richardson(RunConfig& cfg) {
    if (!cfg.richardson) cfg.richardson.emplace();
    return *cfg.richardson;
}

}  // namespace

MapKind parse_map(std::string_view text) {
    if (text == "log") return MapKind::Logarithmic;
    if (text == "alg") return MapKind::Algebraic;
    throw ConfigError(fmt::format("map must be 'log' or 'alg', got '{}'", text));
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "tsv") return OutputFormat::Tsv;
    if (text == "human") return OutputFormat::Human;
    throw ConfigError(fmt::format("format must be csv, tsv or human, got '{}'", text));
}

WeightRule parse_weights(std::string_view text) {
    if (text == "nodal") return WeightRule::Nodal;
    if (text == "quarter") return WeightRule::QuarterNode;
    throw ConfigError(fmt::format("weights must be 'nodal' or 'quarter', got '{}'", text));
}

std::vector<double> parse_orders(std::string_view text) {
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = trim(text.substr(0, comma));
        out.push_back(parse_double(item, "richardson_orders"));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) throw ConfigError("richardson_orders must list at least one exponent");
    return out;
}

std::string_view to_string(OutputFormat format) noexcept {
    switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Tsv: return "tsv";
    case OutputFormat::Human: return "human";
    }
    return "csv";
}

RunConfig parse_config(std::istream& in, RunConfig cfg) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;

        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("config line {}: expected 'key = value'", line_no));
        }
        const std::string_view key = trim(view.substr(0, eq));
        const std::string_view value = trim(view.substr(eq + 1));
        try {
            if (key == "map") cfg.map = parse_map(value);
            else if (key == "c") cfg.c = parse_double(value, key);
            else if (key == "N") cfg.N = parse_int(value, key);
            else if (key == "tol") cfg.tol = parse_double(value, key);
            else if (key == "beta_start") cfg.beta_start = parse_double(value, key);
            else if (key == "beta_stop") cfg.beta_stop = parse_double(value, key);
            else if (key == "beta_step") cfg.beta_step = parse_double(value, key);
            else if (key == "richardson_n0") richardson(cfg).n0 = parse_int(value, key);
            else if (key == "richardson_levels") richardson(cfg).levels = parse_int(value, key);
            else if (key == "richardson_orders") richardson(cfg).orders = parse_orders(value);
            else if (key == "output") cfg.output = std::string(value);
            else if (key == "format") cfg.format = parse_format(value);
            else throw ConfigError(fmt::format("unknown key '{}'", key));
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("config line {}: {}", line_no, e.what()));
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    return parse_config(in, std::move(base));
}

std::string serialize_config(const RunConfig& cfg) {
    // {} prints the shortest representation that reads back to the same double.
    std::string out;
    out += fmt::format("map = {}\n", to_string(cfg.map));
    out += fmt::format("c = {}\n", cfg.c);
    out += fmt::format("N = {}\n", cfg.N);
    out += fmt::format("tol = {}\n", cfg.tol);
    out += fmt::format("beta_start = {}\n", cfg.beta_start);
    out += fmt::format("beta_stop = {}\n", cfg.beta_stop);
    out += fmt::format("beta_step = {}\n", cfg.beta_step);
    if (cfg.richardson) {
        out += fmt::format("richardson_n0 = {}\n", cfg.richardson->n0);
        out += fmt::format("richardson_levels = {}\n", cfg.richardson->levels);
        if (!cfg.richardson->orders.empty()) {
            out += fmt::format("richardson_orders = {}\n", fmt::join(cfg.richardson->orders, ","));
        }
    }
    out += fmt::format("output = {}\n", cfg.output);
    out += fmt::format("format = {}\n", to_string(cfg.format));
    return out;
}

void check(const RunConfig& cfg) {
    if (!(cfg.c > 0.0)) throw ConfigError(fmt::format("c must be positive, got {}", cfg.c));
    if (cfg.N < 2) throw ConfigError(fmt::format("N must be at least 2, got {}", cfg.N));
    if (!(cfg.tol > 0.0)) throw ConfigError(fmt::format("tol must be positive, got {}", cfg.tol));
    if (cfg.max_iter < 1) throw ConfigError("max_iter must be at least 1");
    if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) throw ConfigError("damping must lie in (0,1]");
    if (cfg.beta_stop < cfg.beta_start) {
        throw ConfigError(fmt::format("beta_stop ({}) is below beta_start ({})", cfg.beta_stop,
                                      cfg.beta_start));
    }
    if (!(cfg.beta_step > 0.0)) throw ConfigError("beta_step must be positive");
    if (cfg.richardson) {
        if (cfg.richardson->n0 < 2) throw ConfigError("richardson_n0 must be at least 2");
        if (cfg.richardson->levels < 0) throw ConfigError("richardson_levels must be non-negative");
        if (!cfg.richardson->orders.empty() &&
            cfg.richardson->orders.size() < static_cast<std::size_t>(cfg.richardson->levels)) {
            throw ConfigError(fmt::format("richardson_orders needs {} exponents, got {}",
                                          cfg.richardson->levels, cfg.richardson->orders.size()));
        }
    }
}

std::vector<double> beta_values(const RunConfig& cfg) {
    const double span = cfg.beta_stop - cfg.beta_start;
    const auto count = static_cast<long>(std::floor(span / cfg.beta_step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        out.push_back(cfg.beta_start + static_cast<double>(k) * cfg.beta_step);
    }
    return out;
}

}  // namespace qubvp::cli
