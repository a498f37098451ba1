#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "veriforge/similarity.hpp"

namespace veriforge {

namespace detail {

// Bron-Kerbosch with Tomita pivoting over an index-based adjacency matrix.
// R: current clique, P: candidates, X: already-covered vertices.
class CliqueEnumerator {
public:
    CliqueEnumerator(std::size_t n, const std::vector<std::vector<bool>>& adj)
        : n_(n), adj_(adj) {}

    std::vector<std::vector<int>> run() {
        std::vector<int> r, p(n_), x;
        for (std::size_t i = 0; i < n_; ++i) p[i] = static_cast<int>(i);
        expand(r, p, x);
        return std::move(cliques_);
    }

private:
    void expand(std::vector<int>& r, std::vector<int> p, std::vector<int> x) {
        if (p.empty() && x.empty()) {
            cliques_.push_back(r);
            return;
        }
        // Pivot: vertex of P ∪ X with the most neighbours in P, shrinking the
        // branch set P \ N(pivot).
        int pivot = -1;
        std::size_t best = 0;
        for (const auto* side : {&p, &x}) {
            for (int u : *side) {
                std::size_t deg = 0;
                for (int v : p)
                    if (adj_[u][v]) ++deg;
                if (pivot < 0 || deg > best) {
                    pivot = u;
                    best = deg;
                }
            }
        }
        std::vector<int> branch;
        for (int v : p)
            if (pivot < 0 || !adj_[pivot][v]) branch.push_back(v);

        for (int v : branch) {
            std::vector<int> p_next, x_next;
            for (int w : p)
                if (adj_[v][w]) p_next.push_back(w);
            for (int w : x)
                if (adj_[v][w]) x_next.push_back(w);
            r.push_back(v);
            expand(r, std::move(p_next), std::move(x_next));
            r.pop_back();
            p.erase(std::find(p.begin(), p.end(), v));
            x.push_back(v);
        }
    }

    std::size_t n_;
    const std::vector<std::vector<bool>>& adj_;
    std::vector<std::vector<int>> cliques_;
};

} // namespace detail

// Sorts each clique's members and orders cliques canonically: descending size,
// ties broken by lexicographically smallest member sequence.
inline void canonicalize_cliques(std::vector<std::vector<std::string>>& cliques) {
    for (auto& c : cliques) std::sort(c.begin(), c.end());
    std::sort(cliques.begin(), cliques.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
}

// Enumerates exactly the maximal cliques of the similarity graph. Isolated
// vertices come back as singleton cliques. Output is canonically ordered.
inline std::vector<std::vector<std::string>> bron_kerbosch_maximal_cliques(const SimilarityGraph& graph) {
    const std::size_t n = graph.nodes.size();
    std::unordered_map<std::string, int> index;
    index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index.emplace(graph.nodes[i], static_cast<int>(i));

    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& e : graph.edges) {
        int a = index.at(e.a), b = index.at(e.b);
        if (a == b) continue;
        adj[a][b] = adj[b][a] = true;
    }

    detail::CliqueEnumerator enumerator(n, adj);
    std::vector<std::vector<std::string>> cliques;
    for (const auto& c : enumerator.run()) {
        std::vector<std::string> ids;
        ids.reserve(c.size());
        for (int v : c) ids.push_back(graph.nodes[v]);
        cliques.push_back(std::move(ids));
    }
    canonicalize_cliques(cliques);
    return cliques;
}

} // namespace veriforge
