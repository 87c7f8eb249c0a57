#pragma once

// End-to-end trial and experiment runners: sample an environment from the
// prior, loop policy/feedback/posterior rounds, accumulate Bayesian regret,
// and stream per-round invariant monitor records.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "graphids/clique.hpp"
#include "graphids/errors.hpp"
#include "graphids/feedback.hpp"
#include "graphids/matrix.hpp"
#include "graphids/policies.hpp"
#include "graphids/posterior.hpp"
#include "graphids/rng.hpp"

namespace graphids {

struct Environment {
    std::vector<double> theta;
    int best_arm = 0;
    double best_mean = 0.0;
};

inline Environment sample_environment(const std::vector<BetaParams>& prior,
                                      std::mt19937_64& rng) {
    Environment env;
    env.theta.resize(prior.size());
    for (std::size_t a = 0; a < prior.size(); ++a) {
        if (!(prior[a].a > 0.0) || !(prior[a].b > 0.0))
            throw invalid_prior_error("prior parameters must be positive");
        std::gamma_distribution<double> ga(prior[a].a, 1.0), gb(prior[a].b, 1.0);
        const double x = ga(rng), y = gb(rng);
        env.theta[a] = x + y > 0.0 ? x / (x + y) : 0.5;
    }
    env.best_arm = argmax_lowest(env.theta);
    env.best_mean = env.theta[env.best_arm];
    return env;
}

struct RegretCurve {
    std::string policy;
    std::uint64_t trial_seed = 0;
    std::vector<double> instant;    // size T
    std::vector<double> cumulative; // size T+1 with cumulative[0] = 0
};

struct MonitorRecord {
    int round = 0;
    double psi = 0.0;           // TS-N reference ratio
    double realized_ratio = 0.0;
    double ratio_bound = 0.0;
    bool lemma2_violation = false;
    bool lemma3_violation = false;
    bool dominance_violation = false;
    bool bound_violation = false;

    bool any() const {
        return lemma2_violation || lemma3_violation || dominance_violation || bound_violation;
    }
};

struct MonitorLog {
    std::vector<MonitorRecord> records;

    bool any_violation() const {
        for (const auto& r : records)
            if (r.any()) return true;
        return false;
    }
};

namespace detail {

// 53-bit uniform in [0,1); keeps sampling independent of distribution
// implementations in the standard library.
inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline int sample_categorical(const std::vector<double>& w, std::mt19937_64& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        if (u < acc) return static_cast<int>(i);
    }
    for (std::size_t i = w.size(); i-- > 0;)
        if (w[i] > 0.0) return static_cast<int>(i);
    return 0;
}

// Squared-numerator ratio with a dust floor: collapsed posteriors leave
// ~1e-16 numerators over zero denominators that are not violations.
inline double monitor_ratio(double num, double den) {
    const double num2 = num * num;
    if (den > 0.0) return num2 / den;
    return num2 <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

// num^2/den > bound + 1e-6, cross-multiplied so near-collapsed rounds with
// dust numerators over dust denominators cannot manufacture violations.
inline bool ratio_exceeds(double num, double den, double bound) {
    const double num2 = num * num;
    if (num2 <= 1e-12) return false;
    if (den <= 0.0) return true;
    return num2 > (bound + 1e-6) * den;
}

// pd^2/pv > ad^2/av + 1e-6 under the same dust discipline.
inline bool dominance_violated(double pd, double pv, double ad, double av) {
    const double pd2 = pd * pd;
    if (pd2 <= 1e-12) return false;
    if (av <= 0.0) return false; // reference ratio unbounded
    if (pv <= 0.0) return true;
    return pd2 * av > (ad * ad + 1e-6 * av) * pv;
}

inline MonitorRecord monitor_round(const std::string& policy, const BanditStatistics& st,
                                   const Matrix& g, const std::vector<double>& pi,
                                   const FeedbackModel& model, int t) {
    const int k = g.size();
    const std::vector<double> v = g.apply(st.info_gain);
    const double ad = dot(st.alpha, st.delta);
    const double av = dot(st.alpha, v);
    const double ah = dot(st.alpha, st.info_gain);
    const double pd = dot(pi, st.delta);
    const double pv = dot(pi, v);
    const double hsum = sum(st.info_gain);

    MonitorRecord r;
    r.round = t;
    r.psi = monitor_ratio(ad, av);
    const bool lp3 = policy == "ids-lp";
    r.realized_ratio = lp3 ? monitor_ratio(pd, ah) : monitor_ratio(pd, pv);
    if (lp3)
        r.ratio_bound = k / 2.0;
    else if (model.kind() == FeedbackKind::deterministic)
        r.ratio_bound = greedy_clique_cover(model.adjacency_at(t)).size() / 2.0;
    else {
        const double rt = model.r_at(t);
        r.ratio_bound = k / (2.0 * (k * rt + 1.0 - rt));
    }

    r.lemma2_violation = ad * ad > 0.5 * k * ah + 1e-6;
    r.lemma3_violation = ad * ad > 0.5 * hsum + 1e-6;
    const bool dominated = policy == "ts-n" || policy == "ids-n" || policy == "idsn-lp";
    r.dominance_violation = dominated && dominance_violated(pd, pv, ad, av);
    r.bound_violation = lp3 ? ratio_exceeds(pd, ah, r.ratio_bound)
                            : ratio_exceeds(ad, av, r.ratio_bound);
    return r;
}

} // namespace detail

struct TrialResult {
    RegretCurve curve;
    MonitorLog monitor;
    EmpiricalCounts empirical; // final observation counts and outcome sums
};

inline TrialResult run_trial(const std::string& policy, const FeedbackModel& model,
                             const std::vector<BetaParams>& prior, int T, int n,
                             std::uint64_t seed, bool monitor = true) {
    if (T < 1) throw error("run_trial: horizon must be positive");
    const int k = model.arms();

    auto env_rng = substream(seed, StreamRole::environment);
    const Environment env = sample_environment(prior, env_rng);
    auto policy_rng = substream(seed, StreamRole::policy);
    auto feedback_rng = substream(seed, StreamRole::feedback);
    auto reward_rng = substream(seed, StreamRole::reward);

    PosteriorState posterior(k, prior, n);
    EmpiricalCounts emp{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
    const bool needs_stats = monitor || policy_uses_posterior(policy);

    TrialResult out;
    out.curve.policy = policy;
    out.curve.trial_seed = seed;
    out.curve.instant.resize(T);
    out.curve.cumulative.assign(T + 1, 0.0);
    if (monitor) out.monitor.records.reserve(T);

    BanditStatistics stats;
    std::vector<Observation> updates;
    for (int t = 1; t <= T; ++t) {
        try {
            if (needs_stats) stats = compute_statistics(posterior);
            const Matrix g = model.effective_matrix(t);
            const SamplingDistribution pi = run_policy(policy, {stats, g, t, emp});
            const int chosen = detail::sample_categorical(pi.weights, policy_rng);
            const ObservationSet obs = model.realize_observations(t, chosen, feedback_rng);

            updates.clear();
            for (int a : obs.observed) {
                const int y = detail::uniform01(reward_rng) < env.theta[a] ? 1 : 0;
                updates.push_back({a, y});
                emp.count[a] += 1.0;
                emp.sum[a] += y;
            }
            posterior.update(updates);

            const double increment = env.best_mean - env.theta[chosen];
            out.curve.instant[t - 1] = increment;
            out.curve.cumulative[t] = out.curve.cumulative[t - 1] + increment;
            if (monitor)
                out.monitor.records.push_back(
                    detail::monitor_round(policy, stats, g, pi.weights, model, t));
        } catch (const schedule_exhausted_error& e) {
            throw schedule_exhausted_error("round " + std::to_string(t) + ": " + e.what());
        } catch (const numerical_failure_error& e) {
            throw numerical_failure_error("round " + std::to_string(t) + ": " + e.what());
        }
    }
    out.empirical = std::move(emp);
    return out;
}

struct AggregateCurve {
    std::string policy;
    std::vector<double> mean_cum;   // index r-1 holds round r
    std::vector<double> stderr_cum;
};

using ModelFactory = std::function<FeedbackModel(std::uint64_t trial_seed)>;
using TrialSink = std::function<void(const TrialResult&)>;

// Trials run under any parallelism degree but land in preallocated slots and
// are drained in trial order, so every aggregate and sink call sequence is
// independent of thread scheduling.
inline std::vector<AggregateCurve> run_experiment(
    const std::vector<std::string>& policies, const ModelFactory& factory,
    const std::vector<BetaParams>& prior, int T, int trials, int n,
    std::uint64_t master_seed, int parallelism, bool monitor = true,
    const TrialSink& sink = {}) {
    if (trials < 1) throw error("run_experiment: trials must be positive");
    const int workers = std::max(1, parallelism);

    std::vector<AggregateCurve> out;
    out.reserve(policies.size());
    for (const auto& policy : policies) {
        std::vector<std::optional<TrialResult>> slots(trials);
        std::vector<std::exception_ptr> failures(trials);
        std::atomic<int> next{0};

        const auto worker = [&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= trials) return;
                const std::uint64_t seed = trial_seed(master_seed, i);
                try {
                    slots[i] = run_trial(policy, factory(seed), prior, T, n, seed, monitor);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        };
        if (workers == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        std::vector<double> acc(T, 0.0), acc2(T, 0.0);
        for (int i = 0; i < trials; ++i) {
            if (failures[i]) {
                try {
                    std::rethrow_exception(failures[i]);
                } catch (const std::exception& e) {
                    throw error("trial seed " + std::to_string(trial_seed(master_seed, i)) +
                                ": " + e.what());
                }
            }
            const TrialResult& tr = *slots[i];
            for (int r = 1; r <= T; ++r) {
                const double c = tr.curve.cumulative[r];
                acc[r - 1] += c;
                acc2[r - 1] += c * c;
            }
            if (sink) sink(tr);
            slots[i].reset();
        }

        AggregateCurve agg;
        agg.policy = policy;
        agg.mean_cum.resize(T);
        agg.stderr_cum.assign(T, 0.0);
        for (int r = 0; r < T; ++r) {
            agg.mean_cum[r] = acc[r] / trials;
            if (trials > 1) {
                const double ss = std::max(0.0, acc2[r] - acc[r] * acc[r] / trials);
                agg.stderr_cum[r] = std::sqrt(ss / (static_cast<double>(trials - 1) * trials));
            }
        }
        out.push_back(std::move(agg));
    }
    return out;
}

// Theoretical Bayesian-regret envelope for the four posterior policies; the
// greedy clique cover is a valid relaxation of the cover number.
inline double expected_regret_bound(const std::string& policy, const FeedbackModel& model,
                                    int T, int k, double prior_entropy) {
    if (policy == "ucb-n" || policy == "ucb-maxn")
        throw no_bound_error("no regret bound for " + policy);
    if (policy == "ids-lp") return std::sqrt(0.5 * k * T * prior_entropy);
    if (policy != "ts-n" && policy != "ids-n" && policy != "idsn-lp")
        throw error("unknown policy: " + policy);

    double total = 0.0;
    if (model.kind() == FeedbackKind::deterministic) {
        if (model.time_invariant()) {
            total = T * (greedy_clique_cover(model.adjacency_at(1)).size() / 2.0);
        } else {
            for (int t = 1; t <= T; ++t)
                total += greedy_clique_cover(model.adjacency_at(t)).size() / 2.0;
        }
    } else {
        const auto per_round = [k](double r) { return k / (2.0 * (k * r + 1.0 - r)); };
        if (model.time_invariant()) {
            total = T * per_round(model.r_at(1));
        } else {
            for (int t = 1; t <= T; ++t) total += per_round(model.r_at(t));
        }
    }
    return std::sqrt(total * prior_entropy);
}

} // namespace graphids
