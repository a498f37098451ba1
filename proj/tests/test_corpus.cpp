#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>

#include "veriforge/corpus.hpp"

#include "fixtures.hpp"

using namespace veriforge;

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Random UTF-8 strings mixing ASCII, escapes-in-waiting, and multibyte runes.
std::string random_utf8(std::mt19937& rng, int len) {
    static const std::vector<std::string> pieces = {
        "a", "Z", "0", " ", "\n", "\t", "\"", "\\", "{", "}", "/", "'",
        "é", "你", "好", "✓", "\U0001F600", "ß",
    };
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    std::string s;
    for (int i = 0; i < len; ++i) s += pieces[pick(rng)];
    return s;
}

} // namespace

TEST_CASE("load_corpus ingests well-formed lines in order") {
    fixtures::TempDir dir;
    auto path = dir.path() / "corpus.jsonl";
    write_file(path,
               R"({"id":"a","problem":"p1","solution":"module a; endmodule"})" "\n"
               R"({"id":"b","problem":"p2","solution":"module b; endmodule"})" "\n"
               R"({"id":"c","problem":"p3","solution":"module c; endmodule"})" "\n");
    Corpus corpus = load_corpus(path);
    REQUIRE(corpus.size() == 3);
    CHECK(corpus.samples[0].id == "a");
    CHECK(corpus.samples[2].id == "c");
    REQUIRE(corpus.stage_log.size() == 1);
    CHECK(corpus.stage_log[0] == StageRecord{"ingest", 3, 3});
}

TEST_CASE("load_corpus rejects duplicate ids citing both lines") {
    fixtures::TempDir dir;
    auto path = dir.path() / "dup.jsonl";
    write_file(path,
               R"({"id":"x1","problem":"p","solution":"s"})" "\n"
               R"({"id":"dup","problem":"p","solution":"s"})" "\n"
               R"({"id":"x2","problem":"p","solution":"s"})" "\n"
               R"({"id":"x3","problem":"p","solution":"s"})" "\n"
               R"({"id":"dup","problem":"p","solution":"s"})" "\n");
    try {
        load_corpus(path);
        FAIL("expected integrity_error");
    } catch (const integrity_error& e) {
        std::string what = e.what();
        CHECK(what.find("dup") != std::string::npos);
        CHECK(what.find("2") != std::string::npos);
        CHECK(what.find("5") != std::string::npos);
    }
}

TEST_CASE("load_corpus reports malformed lines by number") {
    fixtures::TempDir dir;
    auto path = dir.path() / "bad.jsonl";
    write_file(path,
               R"({"id":"a","problem":"p","solution":"s"})" "\n"
               "not json at all\n");
    try {
        load_corpus(path);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
    }

    write_file(path, R"({"id":"a","problem":"p"})" "\n"); // missing solution
    CHECK_THROWS_AS(load_corpus(path), parse_error);
}

TEST_CASE("empty file loads as empty corpus") {
    fixtures::TempDir dir;
    auto path = dir.path() / "empty.jsonl";
    write_file(path, "");
    Corpus corpus = load_corpus(path);
    CHECK(corpus.empty());
    REQUIRE(corpus.stage_log.size() == 1);
    CHECK(corpus.stage_log[0] == StageRecord{"ingest", 0, 0});
}

TEST_CASE("save/load round-trip is field-exact") {
    fixtures::TempDir dir;
    Corpus corpus;
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        Sample s = fixtures::make_sample("s" + std::to_string(i), "problem " + std::to_string(i),
                                         "module m" + std::to_string(i) + "; endmodule");
        if (i % 2) s.description = "desc\nwith newline";
        if (i % 3) s.quality_score = (i % 10) / 10.0;
        if (i % 5) s.domain = "fifo_buffer";
        corpus.samples.push_back(std::move(s));
    }
    auto path = dir.path() / "corpus.jsonl";
    save_corpus(corpus, path);
    Corpus loaded = load_corpus(path);
    REQUIRE(loaded.samples == corpus.samples);
}

TEST_CASE("saving an empty corpus produces a loadable empty file") {
    fixtures::TempDir dir;
    auto path = dir.path() / "empty.jsonl";
    save_corpus(Corpus{}, path);
    CHECK(load_corpus(path).empty());
}

TEST_CASE("newline- and quote-bearing Verilog round-trips exactly") {
    fixtures::TempDir dir;
    Sample s = fixtures::make_sample("nl", "p",
                                     "module m;\ninitial $display(\"quote \\\" here\");\nendmodule\n");
    s.testbench = "line1\r\nline2\ttabbed\n";
    Corpus corpus;
    corpus.samples.push_back(s);
    auto path = dir.path() / "nl.jsonl";
    save_corpus(corpus, path);
    Corpus loaded = load_corpus(path);
    REQUIRE(loaded.size() == 1);
    CHECK(loaded.samples[0].solution == s.solution);
    CHECK(loaded.samples[0].testbench == s.testbench);
    CHECK(loaded.samples[0] == s);
}

TEST_CASE("round-trip persistence is lossless for arbitrary UTF-8 fields") {
    fixtures::TempDir dir;
    std::mt19937 rng(42);
    Corpus corpus;
    for (int i = 0; i < 60; ++i) {
        Sample s;
        s.id = "u" + std::to_string(i);
        s.problem = random_utf8(rng, 20);
        s.solution = random_utf8(rng, 40);
        s.description = random_utf8(rng, 15);
        s.reasoning_path = random_utf8(rng, 25);
        s.testbench = random_utf8(rng, 10);
        s.provenance = random_utf8(rng, 5);
        corpus.samples.push_back(std::move(s));
    }
    auto path = dir.path() / "utf8.jsonl";
    save_corpus(corpus, path);
    CHECK(load_corpus(path).samples == corpus.samples);

    // A second save of the loaded corpus is byte-identical (canonical form).
    auto path2 = dir.path() / "utf8-2.jsonl";
    save_corpus(load_corpus(path), path2);
    std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
    std::string b1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string b2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(b1 == b2);
}

TEST_CASE("unknown keys are preserved on round-trip") {
    fixtures::TempDir dir;
    auto path = dir.path() / "extra.jsonl";
    write_file(path,
               R"({"id":"a","problem":"p","solution":"s","tier":2,"tags":["x","y"]})" "\n");
    Corpus corpus = load_corpus(path);
    REQUIRE(corpus.size() == 1);
    CHECK(corpus.samples[0].extra.at("tier") == 2);
    auto out = dir.path() / "extra-out.jsonl";
    save_corpus(corpus, out);
    Corpus reloaded = load_corpus(out);
    CHECK(reloaded.samples[0].extra == corpus.samples[0].extra);
}

TEST_CASE("quality_score outside [0,1] is rejected") {
    fixtures::TempDir dir;
    auto path = dir.path() / "qs.jsonl";
    write_file(path, R"({"id":"a","problem":"p","solution":"s","quality_score":1.5})" "\n");
    CHECK_THROWS_AS(load_corpus(path), parse_error);
}

TEST_CASE("record_stage appends counts and validates subset") {
    Corpus input;
    for (int i = 0; i < 100; ++i)
        input.samples.push_back(fixtures::make_sample("s" + std::to_string(i), "p", "sol"));
    input.stage_log.push_back({"ingest", 100, 100});

    SECTION("plain reduction") {
        Corpus output;
        for (int i = 0; i < 60; ++i) output.samples.push_back(input.samples[i]);
        Corpus result = record_stage(input, "dedup", output);
        REQUIRE(result.stage_log.size() == 2);
        CHECK(result.stage_log[1] == StageRecord{"dedup", 100, 60});
        CHECK(result.size() == 60);
    }

    SECTION("identity stage") {
        Corpus result = record_stage(input, "noop", input);
        CHECK(result.stage_log.back() == StageRecord{"noop", 100, 100});
    }

    SECTION("foreign sample rejected") {
        Corpus output;
        output.samples.push_back(fixtures::make_sample("foreign", "p", "sol"));
        CHECK_THROWS_AS(record_stage(input, "bad", output), integrity_error);
    }
}

TEST_CASE("stage reduction arithmetic") {
    StageRecord r{"dedup", 100, 60};
    CHECK(r.reduction() == Catch::Approx(0.4));

    Corpus corpus;
    corpus.stage_log = {{"ingest", 1000, 1000}, {"compile", 1000, 500}, {"verify", 500, 100}};
    CHECK(cumulative_reduction(corpus) == Catch::Approx(0.9));
}

TEST_CASE("default domain taxonomy has 15 labels") {
    CHECK(default_domain_taxonomy().size() == 15);
}
