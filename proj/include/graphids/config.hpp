#pragma once

// key=value experiment configuration with '#' comments. Every diagnostic
// names the offending key and line so configs stay debuggable.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "graphids/errors.hpp"
#include "graphids/policies.hpp"
#include "graphids/posterior.hpp"

namespace graphids {

struct ExperimentConfig {
    int k = 0;
    int t = 0;
    int trials = 1000;
    int n = 1000;
    std::uint64_t seed = 1;
    std::vector<std::string> policies{"ts-n", "ids-n", "idsn-lp", "ids-lp"};
    std::string feedback;            // deterministic | er | deterministic-er
    std::string graph;               // adjacency file, resolved against the config dir
    double r = -1.0;                 // er: fixed observation probability
    bool r_uniform = false;          // er: fresh U[0,1] r each round, per trial
    double p = -1.0;                 // deterministic-er: edge probability
    std::vector<BetaParams> prior{{1.0, 1.0}}; // broadcast when a single pair
    std::string out = "results";
    bool monitor = true;
    int threads = 0; // 0 picks hardware concurrency
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] inline void config_fail(const std::filesystem::path& path, int line,
                                     const std::string& message) {
    throw parse_error(path.string() + ":" + std::to_string(line) + ": " + message);
}

inline long long parse_integer(const std::filesystem::path& path, int line,
                               const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        config_fail(path, line, "key '" + key + "' expects an integer, got '" + value + "'");
    }
}

inline double parse_number(const std::filesystem::path& path, int line, const std::string& key,
                           const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        config_fail(path, line, "key '" + key + "' expects a number, got '" + value + "'");
    }
}

} // namespace detail

inline ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config: " + path.string());

    ExperimentConfig cfg;
    bool saw_k = false, saw_t = false, saw_feedback = false;
    int graph_line = 0, r_line = 0, p_line = 0, prior_line = 0, policies_line = 0;
    std::string prior_value;

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string text = detail::trim(raw);
        if (text.empty()) continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            detail::config_fail(path, line, "expected key = value, got '" + text + "'");
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        if (value.empty()) detail::config_fail(path, line, "key '" + key + "' has no value");

        if (key == "K") {
            const long long x = detail::parse_integer(path, line, key, value);
            if (x < 2 || x > 64) detail::config_fail(path, line, "key 'K' must be in [2, 64]");
            cfg.k = static_cast<int>(x);
            saw_k = true;
        } else if (key == "T") {
            const long long x = detail::parse_integer(path, line, key, value);
            if (x < 1) detail::config_fail(path, line, "key 'T' must be positive");
            cfg.t = static_cast<int>(x);
            saw_t = true;
        } else if (key == "trials") {
            const long long x = detail::parse_integer(path, line, key, value);
            if (x < 1) detail::config_fail(path, line, "key 'trials' must be positive");
            cfg.trials = static_cast<int>(x);
        } else if (key == "n") {
            const long long x = detail::parse_integer(path, line, key, value);
            if (x < 1) detail::config_fail(path, line, "key 'n' must be positive");
            cfg.n = static_cast<int>(x);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(detail::parse_integer(path, line, key, value));
        } else if (key == "threads") {
            const long long x = detail::parse_integer(path, line, key, value);
            if (x < 0) detail::config_fail(path, line, "key 'threads' must be nonnegative");
            cfg.threads = static_cast<int>(x);
        } else if (key == "policies") {
            cfg.policies = detail::split(value, ',');
            policies_line = line;
        } else if (key == "feedback") {
            if (value != "deterministic" && value != "er" && value != "deterministic-er")
                detail::config_fail(path, line,
                                    "key 'feedback' must be deterministic, er, or "
                                    "deterministic-er");
            cfg.feedback = value;
            saw_feedback = true;
        } else if (key == "graph") {
            cfg.graph = value;
            graph_line = line;
        } else if (key == "r") {
            if (value == "uniform") {
                cfg.r_uniform = true;
                cfg.r = -1.0;
            } else {
                cfg.r_uniform = false;
                cfg.r = detail::parse_number(path, line, key, value);
                if (cfg.r < 0.0 || cfg.r > 1.0)
                    detail::config_fail(path, line, "key 'r' must be in [0, 1] or 'uniform'");
            }
            r_line = line;
        } else if (key == "p") {
            cfg.p = detail::parse_number(path, line, key, value);
            if (cfg.p < 0.0 || cfg.p > 1.0)
                detail::config_fail(path, line, "key 'p' must be in [0, 1]");
            p_line = line;
        } else if (key == "prior") {
            prior_value = value;
            prior_line = line;
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "monitor") {
            if (value == "on")
                cfg.monitor = true;
            else if (value == "off")
                cfg.monitor = false;
            else
                detail::config_fail(path, line, "key 'monitor' must be on or off");
        } else {
            detail::config_fail(path, line, "unknown key '" + key + "'");
        }
    }

    if (!saw_k) detail::config_fail(path, line, "missing required key 'K'");
    if (!saw_t) detail::config_fail(path, line, "missing required key 'T'");
    if (!saw_feedback) detail::config_fail(path, line, "missing required key 'feedback'");

    for (const auto& policy : cfg.policies) {
        bool known = false;
        for (const auto& name : policy_names()) known = known || name == policy;
        if (!known)
            detail::config_fail(path, policies_line ? policies_line : line,
                                "key 'policies' names unknown policy '" + policy + "'");
    }
    if (cfg.policies.empty())
        detail::config_fail(path, policies_line, "key 'policies' must name at least one policy");

    if (cfg.feedback == "deterministic") {
        if (cfg.graph.empty())
            detail::config_fail(path, line, "deterministic feedback requires key 'graph'");
        const std::filesystem::path resolved =
            path.has_parent_path() ? path.parent_path() / cfg.graph
                                   : std::filesystem::path(cfg.graph);
        if (!std::filesystem::exists(resolved))
            detail::config_fail(path, graph_line,
                                "key 'graph' file not found: " + resolved.string());
        cfg.graph = resolved.string();
    } else if (cfg.feedback == "er") {
        if (!cfg.r_uniform && cfg.r < 0.0)
            detail::config_fail(path, line, "er feedback requires key 'r'");
        (void)r_line;
    } else if (cfg.feedback == "deterministic-er") {
        if (cfg.p < 0.0)
            detail::config_fail(path, line, "deterministic-er feedback requires key 'p'");
        (void)p_line;
    }

    if (!prior_value.empty()) {
        cfg.prior.clear();
        for (const auto& pair : detail::split(prior_value, ';')) {
            const auto parts = detail::split(pair, ',');
            if (parts.size() != 2)
                detail::config_fail(path, prior_line,
                                    "key 'prior' expects 'a,b' pairs separated by ';'");
            const double a = detail::parse_number(path, prior_line, "prior", parts[0]);
            const double b = detail::parse_number(path, prior_line, "prior", parts[1]);
            if (!(a > 0.0) || !(b > 0.0))
                detail::config_fail(path, prior_line, "key 'prior' parameters must be positive");
            cfg.prior.push_back({a, b});
        }
    }
    if (cfg.prior.size() == 1) cfg.prior.assign(cfg.k, cfg.prior[0]);
    if (static_cast<int>(cfg.prior.size()) != cfg.k)
        detail::config_fail(path, prior_line ? prior_line : line,
                            "key 'prior' must give one pair or K pairs");

    return cfg;
}

} // namespace graphids
