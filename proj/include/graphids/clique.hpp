#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "graphids/errors.hpp"
#include "graphids/feedback.hpp" // adjacency validation
#include "graphids/matrix.hpp"

namespace graphids {

struct CliqueCover {
    std::vector<std::vector<int>> cliques; // each sorted; together they partition 0..K-1
    int size() const { return static_cast<int>(cliques.size()); }
};

namespace detail {

// Directed inputs are symmetrized by edge intersection: keep (i,j) only if
// both directions are present.
inline Matrix symmetrized(const Matrix& a) {
    validate_adjacency(a);
    const int k = a.size();
    Matrix s(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) s(i, j) = a(i, j) * a(j, i);
    return s;
}

inline std::vector<std::uint32_t> neighbor_masks(const Matrix& s) {
    const int k = s.size();
    std::vector<std::uint32_t> adj(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (s(i, j) == 1.0) adj[i] |= 1u << j;
    return adj;
}

} // namespace detail

// First-fit cover: vertices in index order, each joins the first existing
// clique it is adjacent to in full, else opens a new one.
inline CliqueCover greedy_clique_cover(const Matrix& adjacency) {
    const Matrix s = detail::symmetrized(adjacency);
    const int k = s.size();
    CliqueCover cover;
    for (int v = 0; v < k; ++v) {
        bool placed = false;
        for (auto& clique : cover.cliques) {
            bool compatible = true;
            for (int u : clique) {
                if (s(v, u) != 1.0) {
                    compatible = false;
                    break;
                }
            }
            if (compatible) {
                clique.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) cover.cliques.push_back({v});
    }
    return cover;
}

// Exact minimum clique cover by subset DP; exponential, hence the size cap.
inline int exact_clique_cover_number(const Matrix& adjacency) {
    const Matrix s = detail::symmetrized(adjacency);
    const int k = s.size();
    if (k > 12) throw size_limit_error("exact_clique_cover_number: K > 12");
    const auto adj = detail::neighbor_masks(s);
    const std::uint32_t full = (k == 32) ? ~0u : ((1u << k) - 1);

    std::vector<char> is_clique(full + 1, 0);
    is_clique[0] = 1;
    for (std::uint32_t m = 1; m <= full; ++m) {
        const int v = std::countr_zero(m);
        const std::uint32_t rest = m & (m - 1);
        is_clique[m] = is_clique[rest] && ((rest & adj[v]) == rest);
    }

    std::vector<int> cover(full + 1, 0);
    for (std::uint32_t m = 1; m <= full; ++m) {
        const int v = std::countr_zero(m);
        const std::uint32_t candidates = m & adj[v]; // cliques through v stay inside here
        int best = k + 1;
        for (std::uint32_t sub = candidates; sub; sub = (sub - 1) & candidates) {
            if ((sub & (1u << v)) && is_clique[sub]) {
                const int c = 1 + cover[m & ~sub];
                if (c < best) best = c;
            }
        }
        cover[m] = best;
    }
    return cover[full];
}

// Exhaustive utility for documentation tables; same size cap.
inline int independence_number(const Matrix& adjacency) {
    const Matrix s = detail::symmetrized(adjacency);
    const int k = s.size();
    if (k > 12) throw size_limit_error("independence_number: K > 12");
    auto adj = detail::neighbor_masks(s);
    for (int v = 0; v < k; ++v) adj[v] &= ~(1u << v); // self-loops never block independence
    const std::uint32_t full = (1u << k) - 1;
    std::vector<char> indep(full + 1, 0);
    indep[0] = 1;
    int best = 0;
    for (std::uint32_t m = 1; m <= full; ++m) {
        const int v = std::countr_zero(m);
        const std::uint32_t rest = m & (m - 1);
        indep[m] = indep[rest] && ((rest & adj[v]) == 0);
        if (indep[m]) best = std::max(best, std::popcount(m));
    }
    return best;
}

} // namespace graphids
