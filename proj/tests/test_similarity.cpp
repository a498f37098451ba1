#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "veriforge/embedding.hpp"
#include "veriforge/similarity.hpp"

#include "fixtures.hpp"

using namespace veriforge;

TEST_CASE("cosine_similarity basics") {
    CHECK(cosine_similarity({1, 0}, {1, 0}) == Catch::Approx(1.0));
    CHECK(cosine_similarity({1, 0}, {0, 1}) == Catch::Approx(0.0));
    CHECK(cosine_similarity({1, 1}, {1, 0}) == Catch::Approx(0.7071).margin(1e-4));
    CHECK(cosine_similarity({0, 0}, {1, 0}) == 0.0); // zero norm
    CHECK_THROWS_AS(cosine_similarity({1, 0, 0}, {1, 0}), std::invalid_argument);
}

TEST_CASE("trigram embedder is deterministic and unit-norm") {
    TrigramHashEmbedder embedder;
    CHECK(embedder.dimension() == 1024);

    auto v1 = embedder.embed("module adder(input a, input b); endmodule");
    auto v2 = embedder.embed("module adder(input a, input b); endmodule");
    CHECK(v1 == v2);

    double norm = 0.0;
    for (double x : v1) norm += x * x;
    CHECK(std::sqrt(norm) == Catch::Approx(1.0).margin(1e-9));

    auto empty = embedder.embed("");
    for (double x : empty) CHECK(x == 0.0);

    auto tiny = embedder.embed("ab"); // shorter than one trigram
    double tiny_norm = 0.0;
    for (double x : tiny) tiny_norm += x * x;
    CHECK(std::sqrt(tiny_norm) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("build_similarity_graph thresholds and identical text") {
    TrigramHashEmbedder embedder;

    SECTION("pairwise-unrelated corpus is edgeless") {
        Corpus corpus;
        for (int i = 0; i < 6; ++i) {
            corpus.samples.push_back(fixtures::make_sample(
                "u" + std::to_string(i), fixtures::random_words(100 + i, 10),
                fixtures::random_words(200 + i, 50)));
        }
        SimilarityGraph g = build_similarity_graph(corpus, embedder, 0.8);
        CHECK(g.nodes.size() == 6);
        CHECK(g.edges.empty());
    }

    SECTION("byte-identical samples edge at similarity 1.0") {
        Corpus corpus;
        corpus.samples.push_back(fixtures::make_sample("a", "same problem", "same solution text"));
        corpus.samples.push_back(fixtures::make_sample("b", "same problem", "same solution text"));
        SimilarityGraph g = build_similarity_graph(corpus, embedder, 0.8);
        REQUIRE(g.edges.size() == 1);
        CHECK(g.edges[0].similarity == Catch::Approx(1.0).margin(1e-9));
    }

    SECTION("threshold domain check") {
        Corpus corpus;
        corpus.samples.push_back(fixtures::make_sample("a", "p", "s"));
        CHECK_THROWS_AS(build_similarity_graph(corpus, embedder, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(build_similarity_graph(corpus, embedder, 1.5), std::invalid_argument);
    }
}

TEST_CASE("planted 4-clique of paraphrases forms K4") {
    TrigramHashEmbedder embedder;
    std::string base = fixtures::random_words(77, 60);
    Corpus corpus;
    for (int i = 0; i < 4; ++i) {
        corpus.samples.push_back(fixtures::make_sample("p" + std::to_string(i),
                                                       "shared task statement",
                                                       base + "\nrev " + std::to_string(i)));
    }
    // Pre-verify the construction: all six pairs clear the threshold.
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            double sim = cosine_similarity(embedder.embed(corpus.samples[i].solution),
                                           embedder.embed(corpus.samples[j].solution));
            REQUIRE(sim >= 0.8);
        }
    }
    SimilarityGraph g = build_similarity_graph(corpus, embedder, 0.8);
    CHECK(g.edges.size() == 6);
}

TEST_CASE("combiner: OR edges on either modality, AND needs both") {
    TrigramHashEmbedder embedder;
    Corpus corpus;
    // Same description text, very different solutions.
    Sample a = fixtures::make_sample("a", "p-a", fixtures::random_words(300, 50));
    a.description = "identical detailed specification text for both";
    Sample b = fixtures::make_sample("b", "p-b", fixtures::random_words(301, 50));
    b.description = "identical detailed specification text for both";
    corpus.samples = {a, b};

    SimilarityGraph or_graph = build_similarity_graph(corpus, embedder, 0.8, SimCombine::Or);
    CHECK(or_graph.edges.size() == 1);

    SimilarityGraph and_graph = build_similarity_graph(corpus, embedder, 0.8, SimCombine::And);
    CHECK(and_graph.edges.empty());
}

TEST_CASE("description modality falls back to problem text") {
    TrigramHashEmbedder embedder;
    Corpus corpus;
    // No descriptions; identical problems, different solutions.
    corpus.samples.push_back(fixtures::make_sample("a", "implement a two input and gate module",
                                                   fixtures::random_words(310, 50)));
    corpus.samples.push_back(fixtures::make_sample("b", "implement a two input and gate module",
                                                   fixtures::random_words(311, 50)));
    SimilarityGraph g = build_similarity_graph(corpus, embedder, 0.8, SimCombine::Or);
    CHECK(g.edges.size() == 1);
}
