#pragma once

// Decision rules mapping per-round statistics and the feedback matrix to a
// sampling distribution. Point-mass decisions always break ties to the
// lowest arm index so seeded runs replay exactly.

#include <cmath>
#include <string>
#include <vector>

#include "graphids/errors.hpp"
#include "graphids/matrix.hpp"
#include "graphids/posterior.hpp"
#include "graphids/solvers.hpp"

namespace graphids {

// Observation counts include side observations, not just pulls.
struct EmpiricalCounts {
    std::vector<double> count;
    std::vector<double> sum;
};

struct PolicyContext {
    const BanditStatistics& stats;
    const Matrix& feedback_matrix;
    int t = 1;
    const EmpiricalCounts& empirical;
};

namespace detail {

inline SamplingDistribution point_mass(std::size_t k, int arm) {
    SamplingDistribution d;
    d.weights.assign(k, 0.0);
    d.weights[arm] = 1.0;
    return d;
}

inline std::vector<double> aggregated_gain(const PolicyContext& ctx) {
    return ctx.feedback_matrix.apply(ctx.stats.info_gain);
}

inline SamplingDistribution greedy_fallback(const PolicyContext& ctx) {
    return point_mass(ctx.stats.alpha.size(), argmax_lowest(ctx.stats.alpha));
}

} // namespace detail

inline SamplingDistribution ts_n(const PolicyContext& ctx) {
    return SamplingDistribution{ctx.stats.alpha};
}

inline SamplingDistribution ids_n(const PolicyContext& ctx) {
    try {
        return solve_p1({ctx.stats.delta, detail::aggregated_gain(ctx)}).dist;
    } catch (const no_information_error&) {
        return detail::greedy_fallback(ctx);
    }
}

inline SamplingDistribution idsn_lp(const PolicyContext& ctx) {
    const std::vector<double> v = detail::aggregated_gain(ctx);
    try {
        return solve_constrained_lp(ctx.stats.delta, v, dot(ctx.stats.alpha, v)).dist;
    } catch (const no_information_error&) {
        return detail::greedy_fallback(ctx);
    }
}

inline SamplingDistribution ids_lp(const PolicyContext& ctx) {
    const std::vector<double> v = detail::aggregated_gain(ctx);
    try {
        return solve_constrained_lp(ctx.stats.delta, v,
                                    dot(ctx.stats.alpha, ctx.stats.info_gain))
            .dist;
    } catch (const no_information_error&) {
        return detail::greedy_fallback(ctx);
    }
}

inline SamplingDistribution ucb_n(const PolicyContext& ctx) {
    const std::size_t k = ctx.empirical.count.size();
    for (std::size_t a = 0; a < k; ++a)
        if (ctx.empirical.count[a] == 0.0) return detail::point_mass(k, static_cast<int>(a));
    int best = 0;
    double best_index = -1e308;
    for (std::size_t a = 0; a < k; ++a) {
        const double mean = ctx.empirical.sum[a] / ctx.empirical.count[a];
        const double index = mean + std::sqrt(2.0 * std::log(ctx.t) / ctx.empirical.count[a]);
        if (index > best_index) {
            best_index = index;
            best = static_cast<int>(a);
        }
    }
    return detail::point_mass(k, best);
}

inline SamplingDistribution ucb_max_n(const PolicyContext& ctx) {
    const std::size_t k = ctx.empirical.count.size();
    const int ucb_arm = argmax_lowest(ucb_n(ctx).weights);
    int best = ucb_arm;
    double best_mean =
        ctx.empirical.count[ucb_arm] > 0.0
            ? ctx.empirical.sum[ucb_arm] / ctx.empirical.count[ucb_arm]
            : 0.0;
    // Only certainly-observed neighbors count; ER rows have no off-diagonal 1s.
    for (std::size_t j = 0; j < k; ++j) {
        if (static_cast<int>(j) == ucb_arm) continue;
        if (ctx.feedback_matrix(ucb_arm, static_cast<int>(j)) != 1.0) continue;
        if (ctx.empirical.count[j] == 0.0) continue;
        const double mean = ctx.empirical.sum[j] / ctx.empirical.count[j];
        if (mean > best_mean) {
            best_mean = mean;
            best = static_cast<int>(j);
        }
    }
    return detail::point_mass(k, best);
}

inline const std::vector<std::string>& policy_names() {
    static const std::vector<std::string> names{"ts-n",   "ids-n", "idsn-lp",
                                                "ids-lp", "ucb-n", "ucb-maxn"};
    return names;
}

inline bool policy_uses_posterior(const std::string& id) {
    return id == "ts-n" || id == "ids-n" || id == "idsn-lp" || id == "ids-lp";
}

inline SamplingDistribution run_policy(const std::string& id, const PolicyContext& ctx) {
    if (id == "ts-n") return ts_n(ctx);
    if (id == "ids-n") return ids_n(ctx);
    if (id == "idsn-lp") return idsn_lp(ctx);
    if (id == "ids-lp") return ids_lp(ctx);
    if (id == "ucb-n") return ucb_n(ctx);
    if (id == "ucb-maxn") return ucb_max_n(ctx);
    throw error("unknown policy: " + id);
}

} // namespace graphids
