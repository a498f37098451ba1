#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "veriforge/clique.hpp"
#include "veriforge/corpus.hpp"
#include "veriforge/similarity.hpp"

namespace veriforge {

// Disjoint groups of mutually similar samples plus the chosen keeper of each.
struct CliqueGrouping {
    std::vector<std::vector<std::string>> groups;
    std::vector<std::string> representatives; // parallel to groups

    std::unordered_set<std::string> representative_set() const {
        return {representatives.begin(), representatives.end()};
    }
};

namespace detail {

// Highest quality score wins; missing scores rank below any scored sample.
// Ties go to the shortest solution, then the lexicographically smallest id.
inline std::string select_representative(const std::vector<std::string>& group,
                                         const std::unordered_map<std::string, const Sample*>& by_id) {
    std::string best;
    double best_score = 0.0;
    std::size_t best_len = 0;
    bool first = true;
    for (const std::string& id : group) {
        const Sample* s = by_id.at(id);
        double score = s->quality_score.value_or(-1.0);
        std::size_t len = s->solution.size();
        bool better = first || score > best_score ||
                      (score == best_score && len < best_len) ||
                      (score == best_score && len == best_len && id < best);
        if (better) {
            best = id;
            best_score = score;
            best_len = len;
            first = false;
        }
    }
    return best;
}

} // namespace detail

// Greedy clique cover in canonical clique order: each node joins the first
// maximal clique that contains it, so the grouping is a deterministic
// partition even though maximal cliques overlap.
inline CliqueGrouping group_and_select(const SimilarityGraph& graph, const Corpus& corpus) {
    std::unordered_map<std::string, const Sample*> by_id;
    by_id.reserve(corpus.samples.size());
    for (const Sample& s : corpus.samples) by_id.emplace(s.id, &s);
    for (const std::string& node : graph.nodes) {
        if (!by_id.count(node))
            throw std::invalid_argument("graph node '" + node + "' is not a corpus sample id");
    }

    CliqueGrouping grouping;
    std::unordered_set<std::string> assigned;
    for (const auto& clique : bron_kerbosch_maximal_cliques(graph)) {
        std::vector<std::string> group;
        for (const std::string& id : clique) {
            if (assigned.insert(id).second) group.push_back(id);
        }
        if (group.empty()) continue;
        grouping.representatives.push_back(detail::select_representative(group, by_id));
        grouping.groups.push_back(std::move(group));
    }
    return grouping;
}

// Three-step redundancy elimination within each domain: similarity graph,
// maximal-clique grouping, one representative per group. Samples without a
// domain label form their own partition; there is no cross-domain comparison.
inline Corpus deduplicate(const Corpus& corpus,
                          const EmbeddingProvider& embedder,
                          double threshold = 0.8,
                          SimCombine combine = SimCombine::Or) {
    if (corpus.empty()) throw std::invalid_argument("deduplicate: corpus is empty");

    // Partition by domain, preserving first-seen order of the labels.
    std::map<std::string, std::vector<std::size_t>> partitions;
    for (std::size_t i = 0; i < corpus.samples.size(); ++i) {
        partitions[corpus.samples[i].domain.value_or("")].push_back(i);
    }

    std::unordered_set<std::string> keep;
    for (const auto& [domain, indices] : partitions) {
        Corpus part;
        part.samples.reserve(indices.size());
        for (std::size_t i : indices) part.samples.push_back(corpus.samples[i]);
        SimilarityGraph graph = build_similarity_graph(part, embedder, threshold, combine);
        CliqueGrouping grouping = group_and_select(graph, part);
        for (const std::string& id : grouping.representatives) keep.insert(id);
    }

    Corpus output;
    for (const Sample& s : corpus.samples) {
        if (keep.count(s.id)) output.samples.push_back(s);
    }
    return record_stage(corpus, "dedup", output);
}

} // namespace veriforge
