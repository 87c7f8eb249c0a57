#pragma once

// Subproblem solvers for the sampling policies: the information-ratio
// minimization and the gain-constrained linear program. Both return
// simplex distributions with support at most 2.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "graphids/errors.hpp"

namespace graphids {

struct SamplingDistribution {
    std::vector<double> weights;
};

// delta: expected instantaneous regrets; v: per-arm aggregated information.
struct RatioProblem {
    std::vector<double> delta;
    std::vector<double> v;
};

namespace detail {

// Ratio convention used throughout: a zero denominator yields zero when the
// numerator is zero (collapsed posterior) and infinity otherwise.
inline double safe_ratio_sq(double num, double den) {
    if (den > 0.0) return num * num / den;
    return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

inline double clamp_nonneg(double x) { return x < 0.0 ? 0.0 : x; }

} // namespace detail

struct P1Result {
    SamplingDistribution dist;
    double objective = 0.0;
};

// Minimizes (pi.delta)^2 / (pi.v) over the simplex. Candidates are pure
// vertices plus a golden-section scan of every pair segment; ties resolve to
// lower objective, then lexicographic pair order, then larger weight on the
// lower index.
inline P1Result solve_p1(const RatioProblem& p) {
    const std::size_t k = p.delta.size();
    if (k == 0 || p.v.size() != k) throw error("solve_p1: mismatched problem vectors");
    std::vector<double> delta(k), v(k);
    for (std::size_t i = 0; i < k; ++i) {
        delta[i] = detail::clamp_nonneg(p.delta[i]); // grid dust never goes negative here
        v[i] = detail::clamp_nonneg(p.v[i]);
    }

    bool any_v = false, any_zero_delta = false;
    for (std::size_t i = 0; i < k; ++i) {
        any_v = any_v || v[i] > 0.0;
        any_zero_delta = any_zero_delta || delta[i] == 0.0;
    }
    if (!any_v && !any_zero_delta)
        throw no_information_error("solve_p1: no arm carries information");

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0, best_j = 0; // best_i == best_j encodes a vertex
    double best_q = 1.0;                // weight on best_i

    const auto consider = [&](std::size_t i, std::size_t j, double q) {
        const double num = q * delta[i] + (1.0 - q) * delta[j];
        const double den = q * v[i] + (1.0 - q) * v[j];
        const double obj = detail::safe_ratio_sq(num, den);
        if (obj < best) {
            best = obj;
            best_i = i;
            best_j = j;
            best_q = q;
        }
    };

    for (std::size_t i = 0; i < k; ++i)
        if (v[i] > 0.0 || delta[i] == 0.0) consider(i, i, 1.0);

    constexpr double invphi = 0.6180339887498949;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (v[i] == 0.0 && v[j] == 0.0) continue;
            // Nonnegative delta keeps the segment objective unimodal.
            const auto phi = [&](double q) {
                return detail::safe_ratio_sq(q * delta[i] + (1.0 - q) * delta[j],
                                             q * v[i] + (1.0 - q) * v[j]);
            };
            double lo = 0.0, hi = 1.0;
            double m1 = hi - invphi * (hi - lo), m2 = lo + invphi * (hi - lo);
            double f1 = phi(m1), f2 = phi(m2);
            while (hi - lo > 1e-10) {
                if (f1 <= f2) {
                    hi = m2;
                    m2 = m1;
                    f2 = f1;
                    m1 = hi - invphi * (hi - lo);
                    f1 = phi(m1);
                } else {
                    lo = m1;
                    m1 = m2;
                    f1 = f2;
                    m2 = lo + invphi * (hi - lo);
                    f2 = phi(m2);
                }
            }
            consider(i, j, 1.0);
            consider(i, j, 0.5 * (lo + hi));
            consider(i, j, 0.0);
        }
    }

    P1Result out;
    out.dist.weights.assign(k, 0.0);
    double wi = best_q, wj = 1.0 - best_q;
    if (wi < 1e-12) wi = 0.0;
    if (wj < 1e-12) wj = 0.0;
    const double total = wi + wj;
    out.dist.weights[best_i] += wi / total;
    out.dist.weights[best_j] += wj / total;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        num += out.dist.weights[i] * delta[i];
        den += out.dist.weights[i] * v[i];
    }
    out.objective = detail::safe_ratio_sq(num, den);
    return out;
}

struct LpResult {
    SamplingDistribution dist;
    double objective = 0.0;
};

// Minimizes pi.delta subject to pi.v >= c over the simplex. Optimal at a
// vertex or a tight two-arm mixture; enumeration is exhaustive.
inline LpResult solve_constrained_lp(const std::vector<double>& delta,
                                     const std::vector<double>& v, double c) {
    const std::size_t k = delta.size();
    if (k == 0 || v.size() != k) throw error("solve_constrained_lp: mismatched vectors");
    double max_v = 0.0;
    for (double x : v) max_v = std::max(max_v, x);
    if (c > max_v + 1e-12) throw infeasible_error("solve_constrained_lp: gain target unreachable");
    if (max_v == 0.0) throw no_information_error("solve_constrained_lp: no arm carries information");
    c = std::min(c, max_v);
    // Vertex feasibility needs relative slack: when c is an alpha-weighted dot
    // product of near-equal components it can land ulps above a component it
    // mathematically cannot exceed, which would strike the cheapest vertex.
    const double c_slack = c - 1e-12 * std::abs(c);

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0, best_j = 0;
    double best_q = 1.0;

    for (std::size_t i = 0; i < k; ++i)
        if (v[i] >= c_slack && delta[i] < best) {
            best = delta[i];
            best_i = best_j = i;
            best_q = 1.0;
        }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double lov = std::min(v[i], v[j]), hiv = std::max(v[i], v[j]);
            if (!(lov < c && c < hiv)) continue;
            const double q = (c - v[j]) / (v[i] - v[j]); // weight on i; constraint tight
            const double obj = q * delta[i] + (1.0 - q) * delta[j];
            if (obj < best) {
                best = obj;
                best_i = i;
                best_j = j;
                best_q = q;
            }
        }
    }

    LpResult out;
    out.dist.weights.assign(k, 0.0);
    double wi = best_q, wj = 1.0 - best_q;
    if (wi < 1e-12) wi = 0.0;
    if (wj < 1e-12) wj = 0.0;
    const double total = wi + wj;
    out.dist.weights[best_i] += wi / total;
    out.dist.weights[best_j] += wj / total;
    out.objective = 0.0;
    for (std::size_t i = 0; i < k; ++i) out.objective += out.dist.weights[i] * delta[i];
    return out;
}

} // namespace graphids
