#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "veriforge/corpus.hpp"
#include "veriforge/embedding.hpp"

namespace veriforge {

inline double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cosine_similarity: dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// How code similarity and description similarity combine into one edge test.
// Or: edge if either modality clears the threshold. And: both must clear it.
enum class SimCombine { Or, And };

inline SimCombine sim_combine_from_string(const std::string& s) {
    if (s == "or") return SimCombine::Or;
    if (s == "and") return SimCombine::And;
    throw std::invalid_argument("unknown similarity combiner '" + s + "' (expected 'or' or 'and')");
}

struct SimilarityEdge {
    std::string a; // lexicographically smaller endpoint
    std::string b;
    double similarity = 0.0;
};

// Undirected graph over sample ids; an edge means the pair's combined
// similarity reached the threshold.
struct SimilarityGraph {
    std::vector<std::string> nodes;
    std::vector<SimilarityEdge> edges;
    double threshold = 0.8;

    std::unordered_map<std::string, std::vector<std::string>> adjacency() const {
        std::unordered_map<std::string, std::vector<std::string>> adj;
        for (const auto& node : nodes) adj[node];
        for (const auto& e : edges) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        return adj;
    }
};

// Pairwise similarity over the corpus, one modality for code (solution) and one
// for natural-language text (description, falling back to the problem statement
// when no description is present). O(n^2) over the given corpus; callers
// partition by domain upstream.
inline SimilarityGraph build_similarity_graph(const Corpus& corpus,
                                              const EmbeddingProvider& embedder,
                                              double threshold = 0.8,
                                              SimCombine combine = SimCombine::Or) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw std::invalid_argument("similarity threshold must lie in (0,1]");

    SimilarityGraph g;
    g.threshold = threshold;
    const std::size_t n = corpus.samples.size();
    g.nodes.reserve(n);

    std::vector<std::vector<double>> code_vecs(n), desc_vecs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Sample& s = corpus.samples[i];
        g.nodes.push_back(s.id);
        const std::string& desc_text =
            (s.description && !s.description->empty()) ? *s.description : s.problem;
        try {
            code_vecs[i] = embedder.embed(s.solution);
            desc_vecs[i] = embedder.embed(desc_text);
        } catch (const std::exception& e) {
            throw std::runtime_error("embedding failed for sample '" + s.id + "': " + e.what());
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sim_code = cosine_similarity(code_vecs[i], code_vecs[j]);
            double sim_desc = cosine_similarity(desc_vecs[i], desc_vecs[j]);
            double combined = combine == SimCombine::Or ? std::max(sim_code, sim_desc)
                                                        : std::min(sim_code, sim_desc);
            if (combined >= threshold) {
                const std::string& a = corpus.samples[i].id;
                const std::string& b = corpus.samples[j].id;
                if (a <= b) {
                    g.edges.push_back({a, b, combined});
                } else {
                    g.edges.push_back({b, a, combined});
                }
            }
        }
    }
    return g;
}

} // namespace veriforge
