#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "graphids/feedback.hpp"
#include "graphids/policies.hpp"
#include "graphids/posterior.hpp"

using namespace graphids;
using Catch::Matchers::WithinAbs;

namespace {

BanditStatistics make_stats(std::vector<double> alpha, std::vector<double> delta,
                            std::vector<double> h) {
    BanditStatistics st;
    const int k = static_cast<int>(alpha.size());
    st.alpha = std::move(alpha);
    st.delta = std::move(delta);
    st.info_gain = std::move(h);
    st.mu.assign(k, 0.5);
    st.conditional_mean = Matrix(k, 0.5);
    return st;
}

EmpiricalCounts make_counts(std::vector<double> n, std::vector<double> sum) {
    return EmpiricalCounts{std::move(n), std::move(sum)};
}

Matrix bowtie() {
    Matrix g = identity_matrix(5);
    const int edges[][2] = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}};
    for (auto [i, j] : edges) g(i, j) = g(j, i) = 1.0;
    return g;
}

void require_simplex(const SamplingDistribution& d) {
    double total = 0.0;
    for (double w : d.weights) {
        REQUIRE(w >= 0.0);
        total += w;
    }
    REQUIRE_THAT(total, WithinAbs(1.0, 1e-9));
}

double weighted(const std::vector<double>& pi, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) s += pi[i] * x[i];
    return s;
}

} // namespace

TEST_CASE("ts-n is the identity on alpha") {
    const EmpiricalCounts emp = make_counts({0, 0}, {0, 0});
    const Matrix g = identity_matrix(2);

    auto st = make_stats({0.5, 0.5}, {0.1, 0.1}, {0.1, 0.1});
    REQUIRE(ts_n({st, g, 1, emp}).weights == std::vector<double>{0.5, 0.5});

    st = make_stats({1.0, 0.0}, {0.0, 0.3}, {0.0, 0.1});
    REQUIRE(ts_n({st, g, 7, emp}).weights == std::vector<double>{1.0, 0.0});
}

TEST_CASE("ids-n forwards to the ratio solver") {
    const EmpiricalCounts emp = make_counts({0, 0}, {0, 0});
    const Matrix g = identity_matrix(2);
    const auto st = make_stats({0.5, 0.5}, {0.0, 0.5}, {1.0, 1.0});
    REQUIRE(ids_n({st, g, 1, emp}).weights == std::vector<double>{1.0, 0.0});
}

TEST_CASE("ids-n on a complete graph plays the regret minimizer") {
    const EmpiricalCounts emp = make_counts({0, 0, 0}, {0, 0, 0});
    const Matrix g = ones_matrix(3);
    const auto st = make_stats({0.2, 0.5, 0.3}, {0.3, 0.1, 0.2}, {0.05, 0.02, 0.07});
    REQUIRE(ids_n({st, g, 1, emp}).weights == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("bayes policies fall back to greedy when nothing can be learned") {
    const EmpiricalCounts emp = make_counts({0, 0}, {0, 0});
    const Matrix g = identity_matrix(2);
    const auto st = make_stats({0.3, 0.7}, {0.2, 0.1}, {0.0, 0.0});
    const std::vector<double> greedy{0.0, 1.0};
    REQUIRE(ids_n({st, g, 1, emp}).weights == greedy);
    REQUIRE(idsn_lp({st, g, 1, emp}).weights == greedy);
    REQUIRE(ids_lp({st, g, 1, emp}).weights == greedy);
}

TEST_CASE("idsn-lp tight mixture worked example") {
    const EmpiricalCounts emp = make_counts({0, 0}, {0, 0});
    const Matrix g = identity_matrix(2);
    const auto st = make_stats({0.5, 0.5}, {0.1, 0.5}, {1.0, 3.0});
    const auto pi = idsn_lp({st, g, 1, emp});
    REQUIRE_THAT(pi.weights[0], WithinAbs(0.5, 1e-9));
    REQUIRE_THAT(pi.weights[1], WithinAbs(0.5, 1e-9));
}

TEST_CASE("lp policies coincide on the identity graph") {
    const EmpiricalCounts emp = make_counts({0, 0, 0}, {0, 0, 0});
    const Matrix g = identity_matrix(3);
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(0.5, 8.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<BetaParams> prior(3);
        for (auto& p : prior) p = {u(rng), u(rng)};
        const PosteriorState ps(3, prior, 500);
        const auto st = compute_statistics(ps);
        REQUIRE(ids_lp({st, g, 1, emp}).weights == idsn_lp({st, g, 1, emp}).weights);
    }
}

TEST_CASE("lp policy objectives never exceed the ts-n regret") {
    const EmpiricalCounts emp = make_counts({0, 0, 0, 0, 0}, {0, 0, 0, 0, 0});
    const Matrix g = bowtie();
    std::mt19937_64 rng(778);
    std::uniform_real_distribution<double> u(0.5, 8.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<BetaParams> prior(5);
        for (auto& p : prior) p = {u(rng), u(rng)};
        const PosteriorState ps(5, prior, 500);
        const auto st = compute_statistics(ps);
        const double ts_regret = weighted(st.alpha, st.delta);
        const double lp2 = weighted(idsn_lp({st, g, 1, emp}).weights, st.delta);
        const double lp3 = weighted(ids_lp({st, g, 1, emp}).weights, st.delta);
        REQUIRE(lp2 <= ts_regret + 1e-9);
        REQUIRE(lp3 <= lp2 + 1e-9); // relaxed constraint can only help
    }
}

TEST_CASE("ids-n ratio never exceeds the ts-n ratio") {
    const EmpiricalCounts emp = make_counts({0, 0, 0, 0, 0}, {0, 0, 0, 0, 0});
    const Matrix g = bowtie();
    std::mt19937_64 rng(779);
    std::uniform_real_distribution<double> u(0.5, 8.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<BetaParams> prior(5);
        for (auto& p : prior) p = {u(rng), u(rng)};
        const PosteriorState ps(5, prior, 500);
        const auto st = compute_statistics(ps);
        const auto v = g.apply(st.info_gain);
        const auto pi = ids_n({st, g, 1, emp}).weights;
        const double num = weighted(pi, st.delta), den = weighted(pi, v);
        const double tsn = weighted(st.alpha, st.delta), tsd = weighted(st.alpha, v);
        REQUIRE(num * num * tsd <= tsn * tsn * den + 1e-9);
    }
}

TEST_CASE("ucb-n initialization, exploitation, and tie-breaks") {
    const auto st = make_stats({0.5, 0.5}, {0.0, 0.0}, {0.0, 0.0});
    const Matrix g = identity_matrix(2);

    REQUIRE(ucb_n({st, g, 1, make_counts({0, 0}, {0, 0})}).weights ==
            std::vector<double>{1.0, 0.0});
    REQUIRE(ucb_n({st, g, 100, make_counts({10, 10}, {9, 1})}).weights ==
            std::vector<double>{1.0, 0.0});
    REQUIRE(ucb_n({st, g, 100, make_counts({10, 10}, {5, 5})}).weights ==
            std::vector<double>{1.0, 0.0});

    // Side observations count: the only unobserved arm goes first.
    const auto st3 = make_stats({0.4, 0.3, 0.3}, {0, 0, 0}, {0, 0, 0});
    REQUIRE(ucb_n({st3, identity_matrix(3), 9, make_counts({5, 0, 3}, {2, 0, 1})}).weights ==
            std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("ucb-maxn follows a better-looking neighbor") {
    const auto st = make_stats({0.4, 0.3, 0.3}, {0, 0, 0}, {0, 0, 0});
    Matrix star = identity_matrix(3);
    star(0, 1) = star(1, 0) = star(0, 2) = star(2, 0) = 1.0;

    // Arm 0 holds the best UCB index via its exploration bonus, but
    // neighbor 2 has the best empirical mean.
    auto emp = make_counts({2, 50, 50}, {1, 10, 35});
    REQUIRE(ucb_n({st, star, 100, emp}).weights == std::vector<double>{1.0, 0.0, 0.0});
    REQUIRE(ucb_max_n({st, star, 100, emp}).weights == std::vector<double>{0.0, 0.0, 1.0});

    // Equal means keep the UCB arm.
    emp = make_counts({2, 50, 50}, {1, 25, 25});
    REQUIRE(ucb_max_n({st, star, 100, emp}).weights == std::vector<double>{1.0, 0.0, 0.0});
}

TEST_CASE("ucb-maxn reduces to ucb-n without certain neighbors") {
    const auto st = make_stats({0.4, 0.3, 0.3}, {0, 0, 0}, {0, 0, 0});
    const Matrix er = FeedbackModel::erdos_renyi(3, 0.25).effective_matrix(1);
    std::mt19937_64 rng(780);
    std::uniform_real_distribution<double> u(1.0, 30.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> n(3), s(3);
        for (int a = 0; a < 3; ++a) {
            n[a] = std::floor(u(rng));
            s[a] = std::floor(u(rng) / 30.0 * n[a]);
        }
        const auto emp = make_counts(n, s);
        REQUIRE(ucb_max_n({st, er, 40, emp}).weights == ucb_n({st, er, 40, emp}).weights);
        REQUIRE(ucb_max_n({st, identity_matrix(3), 40, emp}).weights ==
                ucb_n({st, identity_matrix(3), 40, emp}).weights);
    }
}

TEST_CASE("every policy returns a valid simplex vector") {
    const Matrix g = bowtie();
    const EmpiricalCounts emp = make_counts({3, 1, 4, 1, 5}, {2, 1, 2, 0, 3});
    std::mt19937_64 rng(781);
    std::uniform_real_distribution<double> u(0.5, 8.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<BetaParams> prior(5);
        for (auto& p : prior) p = {u(rng), u(rng)};
        const PosteriorState ps(5, prior, 500);
        const auto st = compute_statistics(ps);
        for (const auto& name : policy_names()) {
            const auto pi = run_policy(name, {st, g, 17, emp});
            REQUIRE(pi.weights.size() == 5);
            require_simplex(pi);
        }
    }
}

TEST_CASE("unknown policy ids are rejected") {
    const auto st = make_stats({1.0, 0.0}, {0, 0}, {0, 0});
    const EmpiricalCounts emp = make_counts({0, 0}, {0, 0});
    REQUIRE_THROWS_AS(run_policy("ids", {st, identity_matrix(2), 1, emp}), error);
    REQUIRE(policy_uses_posterior("ts-n"));
    REQUIRE(policy_uses_posterior("ids-lp"));
    REQUIRE_FALSE(policy_uses_posterior("ucb-n"));
    REQUIRE_FALSE(policy_uses_posterior("ucb-maxn"));
}
