#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "graphids/errors.hpp"
#include "graphids/matrix.hpp"

namespace graphids {

struct BetaParams {
    double a = 1.0; // success count + prior
    double b = 1.0; // failure count + prior
};

struct Observation {
    int arm = 0;
    int outcome = 0; // 0 or 1
};

namespace detail {

// Gauss-Legendre nodes/weights on [0,1]. Newton on P_m; plenty for the
// polynomial degrees that show up here (m stays below ~20).
inline void gauss_legendre_01(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(m);
    weights.resize(m);
    for (int i = 0; i < m; ++i) {
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= m; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = (1.0 + x) / 2.0;
        weights[i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
}

} // namespace detail

// Bernoulli KL divergence d(p || q) in nats, inputs clamped away from {0,1}.
// log1p form keeps the result accurate (and nonnegative) when p is close
// to q, where the naive expression cancels catastrophically.
inline double bernoulli_kl(double p, double q) {
    constexpr double lo = 1e-12, hi = 1.0 - 1e-12;
    p = std::min(std::max(p, lo), hi);
    q = std::min(std::max(q, lo), hi);
    const double t1 = p * std::log1p((p - q) / q);
    const double t2 = (1.0 - p) * std::log1p((q - p) / (1.0 - q));
    return std::max(0.0, t1 + t2);
}

// Independent Beta posteriors on a fixed grid. The grid is treated as a
// genuine probability model: arm a has mass w_a(k) on cell k (proportional
// to the Beta pdf at the cell midpoint, renormalized) and is uniform within
// the cell. Every statistic below is an exact integral of that model, which
// is what makes the consistency identities (sum alpha = 1, delta >= 0,
// h <= entropy) hold to rounding rather than to discretization error.
class PosteriorState {
  public:
    PosteriorState(int arms, std::vector<BetaParams> prior, int grid_size)
        : params_(std::move(prior)), n_(grid_size) {
        if (arms < 2) throw error("need at least two arms");
        if (static_cast<int>(params_.size()) != arms) throw error("prior size mismatch");
        if (n_ < 1) throw error("grid size must be positive");
        for (const BetaParams& p : params_)
            if (!(p.a > 0.0) || !(p.b > 0.0))
                throw invalid_prior_error("Beta parameters must be positive");
        coarse_ = n_ < 50;
        w_.assign(params_.size(), {});
        cdf_.assign(params_.size(), {});
        pex_.assign(params_.size(), {});
        mean_.assign(params_.size(), 0.0);
        for (int a = 0; a < arms; ++a) refresh(a);
    }

    int arms() const { return static_cast<int>(params_.size()); }
    int grid_size() const { return n_; }
    bool coarse_grid() const { return coarse_; }
    const BetaParams& params(int arm) const { return params_[arm]; }
    double grid_point(int k) const { return (k + 0.5) / n_; }

    // Cell mass, inclusive CDF, inclusive partial expectation.
    const std::vector<double>& cell_mass(int arm) const { return w_[arm]; }
    const std::vector<double>& cdf(int arm) const { return cdf_[arm]; }
    const std::vector<double>& partial_expectation(int arm) const { return pex_[arm]; }
    double mean(int arm) const { return mean_[arm]; }

    // Conjugate update: Beta(a,b) + outcome y -> Beta(a+y, b+1-y).
    // One batch may touch each arm at most once.
    void update(const std::vector<Observation>& observations) {
        std::vector<char> seen(params_.size(), 0);
        for (const Observation& o : observations) {
            if (o.arm < 0 || o.arm >= arms()) throw error("observation arm out of range");
            if (o.outcome != 0 && o.outcome != 1)
                throw invalid_outcome_error("outcome must be 0 or 1 (arm " +
                                            std::to_string(o.arm + 1) + ")");
            if (seen[o.arm])
                throw duplicate_observation_error("arm " + std::to_string(o.arm + 1) +
                                                  " appears twice in one batch");
            seen[o.arm] = 1;
        }
        for (const Observation& o : observations) {
            params_[o.arm].a += o.outcome;
            params_[o.arm].b += 1 - o.outcome;
            refresh(o.arm);
        }
    }

  private:
    void refresh(int arm) {
        const double a = params_[arm].a, b = params_[arm].b;
        const double logbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
        std::vector<double>& w = w_[arm];
        std::vector<double>& cdf = cdf_[arm];
        std::vector<double>& pex = pex_[arm];
        w.resize(n_);
        cdf.resize(n_);
        pex.resize(n_);
        double maxlog = -1e308;
        for (int k = 0; k < n_; ++k) {
            const double x = grid_point(k);
            const double lp = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - logbeta;
            w[k] = lp;
            if (lp > maxlog) maxlog = lp;
        }
        double total = 0.0;
        for (int k = 0; k < n_; ++k) {
            w[k] = std::exp(w[k] - maxlog);
            total += w[k];
        }
        if (!(total > 0.0) || !std::isfinite(total))
            throw numerical_failure_error("posterior mass vanished for arm " +
                                          std::to_string(arm + 1));
        double acc = 0.0, eacc = 0.0;
        for (int k = 0; k < n_; ++k) {
            w[k] /= total;
            acc += w[k];
            eacc += grid_point(k) * w[k];
            cdf[k] = acc;
            pex[k] = eacc;
        }
        mean_[arm] = eacc;
    }

    std::vector<BetaParams> params_;
    int n_;
    bool coarse_ = false;
    std::vector<std::vector<double>> w_, cdf_, pex_;
    std::vector<double> mean_;
};

struct BanditStatistics {
    std::vector<double> alpha;      // posterior law of the optimal arm
    std::vector<double> mu;         // posterior means
    std::vector<double> delta;      // rho_star - mu
    std::vector<double> info_gain;  // h: mutual information between A* and one pull, nats
    Matrix conditional_mean;        // M(a*, a) = E[theta_a | A* = a*]
    double rho_star = 0.0;
    double entropy = 0.0; // H(alpha), nats
    bool coarse_grid = false;
};

// One pass over the grid: O(K^2 n) at desk scale. Per cell, per Gauss node,
// prefix/suffix products give every "all CDFs but one" term; the node count
// ceil((K+1)/2) makes the quadrature exact for the within-cell polynomials,
// so the outputs are exact moments of the discrete model up to rounding.
inline BanditStatistics compute_statistics(const PosteriorState& state) {
    const int K = state.arms();
    const int n = state.grid_size();
    const int m = (K + 2) / 2;
    std::vector<double> nodes, weights;
    detail::gauss_legendre_01(m, nodes, weights);

    std::vector<const double*> w(K), cdf(K), pex(K);
    for (int a = 0; a < K; ++a) {
        w[a] = state.cell_mass(a).data();
        cdf[a] = state.cdf(a).data();
        pex[a] = state.partial_expectation(a).data();
    }

    std::vector<double> alpha(K, 0.0), diag(K, 0.0);
    Matrix cross(K); // cross(a*, a) accumulates E[theta_a ; A* = a*]
    std::vector<double> ft(K), gt(K), ratio(K), prefix(K + 1), suffix(K + 1);

    for (int k = 0; k < n; ++k) {
        bool live = false;
        for (int a = 0; a < K; ++a)
            if (w[a][k] != 0.0) {
                live = true;
                break;
            }
        if (!live) continue; // no arm has mass here; nothing can change

        for (int q = 0; q < m; ++q) {
            const double u = nodes[q], gw = weights[q];
            const double x = (k + u) / n;
            const double half = (2.0 * k + u) * u / (2.0 * n); // (k+u)^2 - k^2 over 2n
            for (int a = 0; a < K; ++a) {
                const double wa = w[a][k];
                ft[a] = (cdf[a][k] - wa) + u * wa;
                gt[a] = (pex[a][k] - state.grid_point(k) * wa) + half * wa;
                ratio[a] = ft[a] > 0.0 ? gt[a] / ft[a] : 0.0;
            }
            prefix[0] = 1.0;
            for (int a = 0; a < K; ++a) prefix[a + 1] = prefix[a] * ft[a];
            suffix[K] = 1.0;
            for (int a = K - 1; a >= 0; --a) suffix[a] = suffix[a + 1] * ft[a];
            for (int s = 0; s < K; ++s) {
                const double t = w[s][k] * prefix[s] * suffix[s + 1];
                if (t == 0.0) continue;
                const double tw = gw * t;
                alpha[s] += tw;
                diag[s] += tw * x;
                double* row = &cross(s, 0);
                for (int a = 0; a < K; ++a) row[a] += tw * ratio[a];
            }
        }
    }

    BanditStatistics st;
    st.coarse_grid = state.coarse_grid();
    st.alpha = std::move(alpha);
    st.mu.resize(K);
    for (int a = 0; a < K; ++a) st.mu[a] = state.mean(a);
    st.conditional_mean = Matrix(K);
    st.rho_star = 0.0;
    for (int s = 0; s < K; ++s) st.rho_star += diag[s];
    for (int s = 0; s < K; ++s) {
        if (st.alpha[s] < 1e-12) {
            // Negligible chance this arm is best: convention is M row = mu,
            // contributing nothing to h.
            for (int a = 0; a < K; ++a) st.conditional_mean(s, a) = st.mu[a];
        } else {
            for (int a = 0; a < K; ++a) st.conditional_mean(s, a) = cross(s, a) / st.alpha[s];
            st.conditional_mean(s, s) = diag[s] / st.alpha[s];
        }
    }
    st.delta.resize(K);
    for (int a = 0; a < K; ++a) st.delta[a] = st.rho_star - st.mu[a];
    st.info_gain.assign(K, 0.0);
    for (int a = 0; a < K; ++a) {
        double h = 0.0;
        for (int s = 0; s < K; ++s) {
            if (st.alpha[s] < 1e-12) continue;
            h += st.alpha[s] * bernoulli_kl(st.conditional_mean(s, a), st.mu[a]);
        }
        st.info_gain[a] = h;
    }
    st.entropy = 0.0;
    for (int s = 0; s < K; ++s)
        if (st.alpha[s] > 0.0) st.entropy -= st.alpha[s] * std::log(st.alpha[s]);

    for (int a = 0; a < K; ++a) {
        bool ok = std::isfinite(st.alpha[a]) && std::isfinite(st.mu[a]) &&
                  std::isfinite(st.delta[a]) && std::isfinite(st.info_gain[a]);
        for (int s = 0; s < K; ++s) ok = ok && std::isfinite(st.conditional_mean(s, a));
        if (!ok) throw numerical_failure_error("non-finite statistic for arm " +
                                               std::to_string(a + 1));
    }
    if (!std::isfinite(st.rho_star) || !std::isfinite(st.entropy))
        throw numerical_failure_error("non-finite summary statistic");
    return st;
}

} // namespace graphids
