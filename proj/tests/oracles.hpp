#pragma once

// Independent oracles used by the unit and acceptance suites. These stay
// deliberately naive and separate from the implementation paths they check.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "veriforge/clique.hpp"
#include "veriforge/similarity.hpp"

namespace oracles {

// Exhaustive maximal-clique enumeration: every subset of the node set is
// tested for pairwise connectivity, then non-maximal cliques are discarded.
// Only usable for small n.
inline std::vector<std::vector<std::string>> brute_force_maximal_cliques(
    const veriforge::SimilarityGraph& graph) {
    const std::size_t n = graph.nodes.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& e : graph.edges) {
        std::size_t a = std::find(graph.nodes.begin(), graph.nodes.end(), e.a) - graph.nodes.begin();
        std::size_t b = std::find(graph.nodes.begin(), graph.nodes.end(), e.b) - graph.nodes.begin();
        adj[a][b] = adj[b][a] = true;
    }

    std::vector<unsigned> cliques;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            for (std::size_t j = i + 1; j < n && ok; ++j) {
                if ((mask & (1u << j)) && !adj[i][j]) ok = false;
            }
        }
        if (ok) cliques.push_back(mask);
    }
    std::vector<std::vector<std::string>> maximal;
    for (unsigned m : cliques) {
        bool is_maximal = true;
        for (unsigned other : cliques) {
            if (other != m && (other & m) == m) {
                is_maximal = false;
                break;
            }
        }
        if (!is_maximal) continue;
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i)
            if (m & (1u << i)) ids.push_back(graph.nodes[i]);
        maximal.push_back(std::move(ids));
    }
    veriforge::canonicalize_cliques(maximal);
    return maximal;
}

inline veriforge::SimilarityGraph random_graph(std::size_t n, double density, std::mt19937& rng) {
    veriforge::SimilarityGraph g;
    for (std::size_t i = 0; i < n; ++i) g.nodes.push_back("n" + std::to_string(i));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng) < density) g.edges.push_back({g.nodes[i], g.nodes[j], 0.9});
        }
    }
    return g;
}

// Exact rational pass@k via Pascal's-triangle binomials; an algebraic route
// independent of the multiplicative form used by the implementation.
inline double pass_at_k_rational(long long n, long long c, long long k) {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    std::vector<std::vector<cpp_int>> binom(n + 1, std::vector<cpp_int>(n + 1, 0));
    for (long long i = 0; i <= n; ++i) {
        binom[i][0] = 1;
        for (long long j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0);
    }
    if (n - c < k) return 1.0;
    cpp_rational miss(binom[n - c][k], binom[n][k]);
    return 1.0 - miss.convert_to<double>();
}

// Monte Carlo oracle: draw k of n without replacement; success when any drawn
// index falls among the first c.
inline double pass_at_k_monte_carlo(long long n, long long c, long long k,
                                    long long trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> idx(n);
    long long hits = 0;
    for (long long t = 0; t < trials; ++t) {
        for (long long i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
        bool hit = false;
        for (long long i = 0; i < k && !hit; ++i) {
            long long j = i + static_cast<long long>(rng() % static_cast<std::uint64_t>(n - i));
            std::swap(idx[i], idx[j]);
            if (idx[i] < c) hit = true;
        }
        if (hit) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

} // namespace oracles
