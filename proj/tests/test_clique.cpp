#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "graphids/clique.hpp"
#include "graphids/feedback.hpp"

using namespace graphids;

namespace {

Matrix cycle5() {
    Matrix a = identity_matrix(5);
    for (int i = 0; i < 5; ++i) {
        const int j = (i + 1) % 5;
        a(i, j) = a(j, i) = 1.0;
    }
    return a;
}

Matrix star(int k) {
    Matrix a = identity_matrix(k);
    for (int j = 1; j < k; ++j) a(0, j) = a(j, 0) = 1.0;
    return a;
}

} // namespace

TEST_CASE("greedy cover on the bundled two-clique graph") {
    const Matrix a = load_adjacency(std::string(GRAPHIDS_DATA_DIR) + "/appendix_b.graph");
    const CliqueCover c = greedy_clique_cover(a);
    REQUIRE(c.size() == 2);
    REQUIRE(c.cliques[0] == std::vector<int>{0, 1, 2});
    REQUIRE(c.cliques[1] == std::vector<int>{3, 4});
    REQUIRE(exact_clique_cover_number(a) == 2);
    REQUIRE(independence_number(a) == 2);
}

TEST_CASE("five-cycle needs three cliques") {
    REQUIRE(exact_clique_cover_number(cycle5()) == 3);
    REQUIRE(greedy_clique_cover(cycle5()).size() == 3);
    REQUIRE(independence_number(cycle5()) == 2);
}

TEST_CASE("boundary graphs") {
    REQUIRE(greedy_clique_cover(ones_matrix(5)).size() == 1);
    REQUIRE(exact_clique_cover_number(ones_matrix(5)) == 1);
    REQUIRE(greedy_clique_cover(identity_matrix(4)).size() == 4);
    REQUIRE(exact_clique_cover_number(identity_matrix(4)) == 4);
    REQUIRE(independence_number(identity_matrix(4)) == 4);
    REQUIRE(greedy_clique_cover(star(5)).size() == 4);
    REQUIRE(exact_clique_cover_number(star(5)) == 4);
}

TEST_CASE("directed edges are symmetrized by intersection") {
    Matrix a = identity_matrix(3);
    a(0, 1) = 1.0; // one direction only: no undirected edge
    REQUIRE(greedy_clique_cover(a).size() == 3);
    a(1, 0) = 1.0;
    REQUIRE(greedy_clique_cover(a).size() == 2);
}

TEST_CASE("greedy never beats the exact cover and both stay in range") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 7); // 2..8
        const double p = u(rng);
        Matrix a = sample_er_adjacency(k, p, rng);
        const int greedy = greedy_clique_cover(a).size();
        const int exact = exact_clique_cover_number(a);
        REQUIRE(greedy >= exact);
        REQUIRE(exact >= 1);
        REQUIRE(greedy <= k);
        // a cover partitions the vertex set
        const CliqueCover c = greedy_clique_cover(a);
        std::vector<int> seen(k, 0);
        for (const auto& q : c.cliques)
            for (int v : q) ++seen[v];
        for (int v = 0; v < k; ++v) REQUIRE(seen[v] == 1);
    }
}

TEST_CASE("exhaustive routines enforce their size budget") {
    REQUIRE_THROWS_AS(exact_clique_cover_number(identity_matrix(13)), size_limit_error);
    REQUIRE_THROWS_AS(independence_number(identity_matrix(13)), size_limit_error);
    REQUIRE_THROWS_AS(greedy_clique_cover(Matrix(3, 0.5)), invalid_adjacency_error);
}
