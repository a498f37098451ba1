#include <catch2/catch_amalgamated.hpp>

#include "veriforge/quality.hpp"

#include "fixtures.hpp"

using namespace veriforge;

namespace {

Corpus clean_corpus(int n) {
    Corpus c;
    for (int i = 0; i < n; ++i) {
        c.samples.push_back(fixtures::make_sample("ok-" + std::to_string(i), "p",
                                                  fixtures::counter_good));
    }
    c.stage_log.push_back({"ingest", c.samples.size(), c.samples.size()});
    return c;
}

} // namespace

TEST_CASE("all-passing corpus with stub judge is unchanged") {
    Corpus corpus = clean_corpus(5);
    StubJudge judge;
    QualityFilterResult result = quality_filter(corpus, judge);
    CHECK(result.corpus.samples == corpus.samples);
    CHECK(result.undetermined == 0);
    CHECK(result.corpus.stage_log.back() == StageRecord{"quality", 5, 5});
}

TEST_CASE("a lint violator is removed") {
    Corpus corpus = clean_corpus(3);
    corpus.samples.insert(corpus.samples.begin() + 1,
                          fixtures::make_sample("violator", "p", fixtures::bad_name_module));
    StubJudge judge;
    QualityFilterResult result = quality_filter(corpus, judge);
    CHECK(result.corpus.size() == 3);
    REQUIRE(result.removed_ids.size() == 1);
    CHECK(result.removed_ids[0] == "violator");
}

TEST_CASE("judge rejection removes a lint-clean sample") {
    Corpus corpus = clean_corpus(4);
    StubJudge judge({"ok-2"});
    QualityFilterResult result = quality_filter(corpus, judge);
    CHECK(result.corpus.size() == 3);
    CHECK(result.removed_ids == std::vector<std::string>{"ok-2"});
}

TEST_CASE("judge transport failure fails open") {
    Corpus corpus = clean_corpus(6);
    ScriptedJudge judge([](const Sample&) -> StyleVerdict {
        throw transport_error("judge endpoint timed out");
    });
    QualityFilterResult result = quality_filter(corpus, judge);
    CHECK(result.corpus.samples == corpus.samples); // corpus unchanged
    CHECK(result.undetermined == 6);
}

TEST_CASE("empty-solution samples are removed, not crashed on") {
    Corpus corpus = clean_corpus(2);
    Sample empty;
    empty.id = "hollow";
    empty.problem = "p";
    corpus.samples.push_back(empty);
    StubJudge judge;
    QualityFilterResult result = quality_filter(corpus, judge);
    CHECK(result.corpus.size() == 2);
}

TEST_CASE("quality_filter never increases corpus size") {
    StubJudge judge;
    for (int n : {0, 1, 5, 12}) {
        Corpus corpus = clean_corpus(n);
        if (n > 2) corpus.samples[1].solution = fixtures::unused_port_module;
        QualityFilterResult result = quality_filter(corpus, judge);
        CHECK(result.corpus.size() <= corpus.size());
    }
}

TEST_CASE("judge concurrency preserves input order") {
    Corpus corpus = clean_corpus(16);
    StubJudge judge({"ok-3", "ok-9"});
    QualityFilterResult result = quality_filter(corpus, judge, LintRuleSet::defaults(), 8);
    REQUIRE(result.corpus.size() == 14);
    std::vector<std::string> ids;
    for (const auto& s : result.corpus.samples) ids.push_back(s.id);
    for (std::size_t i = 1; i < ids.size(); ++i) {
        // ok-N ids sort by numeric suffix in input order
        CHECK(ids[i - 1] != ids[i]);
    }
    CHECK(std::find(ids.begin(), ids.end(), "ok-3") == ids.end());
    CHECK(std::find(ids.begin(), ids.end(), "ok-9") == ids.end());
}
