#pragma once

// Experiment orchestration and CSV serialization. Files append in
// (policy, trial, round) order and doubles use shortest round-trip
// formatting, so identical seeds produce byte-identical output.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "graphids/config.hpp"
#include "graphids/simulate.hpp"

namespace graphids {

inline std::string format_number(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline ModelFactory make_model_factory(const ExperimentConfig& cfg) {
    if (cfg.feedback == "deterministic") {
        Matrix adjacency = load_adjacency(cfg.graph);
        if (adjacency.size() != cfg.k)
            throw parse_error("graph file is " + std::to_string(adjacency.size()) +
                              " arms but K = " + std::to_string(cfg.k));
        const FeedbackModel model = FeedbackModel::deterministic(std::move(adjacency));
        return [model](std::uint64_t) { return model; };
    }
    if (cfg.feedback == "er") {
        if (!cfg.r_uniform) {
            const FeedbackModel model = FeedbackModel::erdos_renyi(cfg.k, cfg.r);
            return [model](std::uint64_t) { return model; };
        }
        const int k = cfg.k, horizon = cfg.t;
        return [k, horizon](std::uint64_t seed) {
            auto rng = substream(seed, StreamRole::schedule);
            std::vector<double> rs(horizon);
            for (double& x : rs) x = detail::uniform01(rng);
            return FeedbackModel::erdos_renyi_schedule(k, std::move(rs));
        };
    }
    // deterministic-er: a fresh deterministic graph every round, per trial
    const int k = cfg.k, horizon = cfg.t;
    const double p = cfg.p;
    return [k, horizon, p](std::uint64_t seed) {
        auto rng = substream(seed, StreamRole::schedule);
        std::vector<Matrix> schedule;
        schedule.reserve(horizon);
        for (int t = 0; t < horizon; ++t) schedule.push_back(sample_er_adjacency(k, p, rng));
        return FeedbackModel::deterministic_schedule(std::move(schedule));
    };
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // fixed newlines on every platform
    if (!out) throw io_error("cannot write " + path.string());
    return out;
}

} // namespace detail

// Executes the configured experiment and writes curves.csv, aggregate.csv,
// bounds.csv, and (when monitoring) monitor.csv. Returns 0 on a clean run,
// 2 if any monitor violation was recorded.
inline int run(const ExperimentConfig& cfg) {
    const std::filesystem::path out_dir(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create output directory " + out_dir.string());

    auto curves = detail::open_output(out_dir / "curves.csv");
    auto aggregate = detail::open_output(out_dir / "aggregate.csv");
    auto bounds = detail::open_output(out_dir / "bounds.csv");
    std::ofstream monitor;
    curves << "policy,trial,round,instant_regret,cum_regret\n";
    aggregate << "policy,round,mean_cum_regret,stderr\n";
    bounds << "policy,theoretical_bound\n";
    if (cfg.monitor) {
        monitor = detail::open_output(out_dir / "monitor.csv");
        monitor << "policy,trial,round,psi,realized_ratio,ratio_bound,"
                   "lemma2,lemma3,dominance,bound\n";
    }

    const ModelFactory factory = make_model_factory(cfg);
    const int threads = cfg.threads > 0
                            ? cfg.threads
                            : std::max(1u, std::thread::hardware_concurrency());

    long long violations = 0;
    std::string current_policy;
    int trial_index = 0;
    const TrialSink sink = [&](const TrialResult& tr) {
        if (tr.curve.policy != current_policy) {
            current_policy = tr.curve.policy;
            trial_index = 0;
        }
        const std::string prefix = tr.curve.policy + "," + std::to_string(trial_index);
        for (std::size_t t = 1; t < tr.curve.cumulative.size(); ++t) {
            curves << prefix << ',' << t << ',' << format_number(tr.curve.instant[t - 1])
                   << ',' << format_number(tr.curve.cumulative[t]) << '\n';
        }
        for (const auto& r : tr.monitor.records) {
            violations += r.any();
            monitor << prefix << ',' << r.round << ',' << format_number(r.psi) << ','
                    << format_number(r.realized_ratio) << ',' << format_number(r.ratio_bound)
                    << ',' << r.lemma2_violation << ',' << r.lemma3_violation << ','
                    << r.dominance_violation << ',' << r.bound_violation << '\n';
        }
        ++trial_index;
    };

    const auto aggregates = run_experiment(cfg.policies, factory, cfg.prior, cfg.t,
                                           cfg.trials, cfg.n, cfg.seed, threads,
                                           cfg.monitor, sink);

    for (const auto& agg : aggregates) {
        for (int r = 1; r <= cfg.t; ++r) {
            aggregate << agg.policy << ',' << r << ',' << format_number(agg.mean_cum[r - 1])
                      << ',' << format_number(agg.stderr_cum[r - 1]) << '\n';
        }
    }

    // Theoretical envelopes exist only for time-invariant feedback laws; the
    // per-trial random schedules have no single bound to quote.
    const bool bounded_feedback =
        cfg.feedback == "deterministic" || (cfg.feedback == "er" && !cfg.r_uniform);
    const double h1 =
        compute_statistics(PosteriorState(cfg.k, cfg.prior, cfg.n)).entropy;
    for (const auto& policy : cfg.policies) {
        bounds << policy << ',';
        if (bounded_feedback) {
            try {
                bounds << format_number(
                    expected_regret_bound(policy, factory(0), cfg.t, cfg.k, h1));
            } catch (const no_bound_error&) {
            }
        }
        bounds << '\n';
    }

    if (!curves || !aggregate || !bounds || (cfg.monitor && !monitor))
        throw io_error("failed writing results to " + out_dir.string());
    return violations > 0 ? 2 : 0;
}

} // namespace graphids
