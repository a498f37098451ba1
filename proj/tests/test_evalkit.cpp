#include <catch2/catch_amalgamated.hpp>

#include "veriforge/evalkit.hpp"

#include "fixtures.hpp"

using namespace veriforge;

namespace {

Corpus benchmark_corpus(int n_problems) {
    Corpus c;
    for (int i = 0; i < n_problems; ++i) {
        Sample s = fixtures::make_sample("prob-" + std::to_string(i),
                                         "design block " + std::to_string(i),
                                         fixtures::counter_good);
        s.testbench = "module tb; initial $finish; endmodule";
        c.samples.push_back(std::move(s));
    }
    return c;
}

} // namespace

TEST_CASE("TokenUsage arithmetic") {
    TokenUsage usage{{100.0, 200.0, 300.0}};
    CHECK(usage.mean() == Catch::Approx(200.0));
    TokenUsage base{{100.0}};
    CHECK(usage.relative_to(base) == Catch::Approx(1.0));
    CHECK_THROWS_AS(TokenUsage{}.mean(), std::invalid_argument);
}

TEST_CASE("efficiency_report reproduces the published token deltas") {
    // Three benchmark columns: adaptive vs easy/medium/hard means.
    struct Column {
        double adaptive, easy, medium, hard;
        long long d_easy, d_medium, d_hard;
    };
    const Column columns[] = {
        {888.0, 235.0, 1302.0, 2473.0, -74, 47, 178},
        {424.0, 164.0, 1156.0, 1725.0, -61, 173, 307},
        {859.0, 356.0, 1650.0, 3940.0, -59, 92, 359},
    };
    for (const Column& col : columns) {
        std::map<std::string, TokenUsage> modes = {
            {"adaptive", TokenUsage::from_mean(col.adaptive)},
            {"easy", TokenUsage::from_mean(col.easy)},
            {"medium", TokenUsage::from_mean(col.medium)},
            {"hard", TokenUsage::from_mean(col.hard)},
        };
        EfficiencyReport report = efficiency_report(modes, "adaptive");
        REQUIRE(report.rows.size() == 4);
        CHECK(report.rows[0].mode == "adaptive");
        CHECK(report.rows[0].delta_pct == 0);
        CHECK(report.rows[0].is_baseline);
        for (const auto& row : report.rows) {
            if (row.mode == "easy") CHECK(row.delta_pct == col.d_easy);
            if (row.mode == "medium") CHECK(row.delta_pct == col.d_medium);
            if (row.mode == "hard") CHECK(row.delta_pct == col.d_hard);
        }
        std::string text = report.format();
        CHECK(text.find("%") != std::string::npos);
    }
}

TEST_CASE("efficiency_report formats signed whole percents") {
    std::map<std::string, TokenUsage> modes = {
        {"adaptive", TokenUsage::from_mean(888.0)},
        {"hard", TokenUsage::from_mean(2473.0)},
    };
    std::string text = efficiency_report(modes, "adaptive").format();
    CHECK(text.find("+178%") != std::string::npos);
    CHECK(text.find("+0%") != std::string::npos);
}

TEST_CASE("efficiency_report argument errors") {
    std::map<std::string, TokenUsage> modes = {{"adaptive", TokenUsage::from_mean(10)}};
    CHECK_THROWS_AS(efficiency_report(modes, "absent"), std::invalid_argument);
    modes["empty"] = TokenUsage{};
    CHECK_THROWS_AS(efficiency_report(modes, "adaptive"), std::invalid_argument);
}

TEST_CASE("evaluate_benchmark with a perfect generator") {
    Corpus problems = benchmark_corpus(3);
    ReferenceSolutionGenerator generator(problems);
    MockBackend backend; // every unit passes
    BenchmarkRun run = evaluate_benchmark(problems, generator, backend, 10, {1, 5, 10});
    CHECK(run.report.pass_at.at(1) == Catch::Approx(1.0));
    CHECK(run.report.pass_at.at(10) == Catch::Approx(1.0));
    for (const auto& p : run.report.per_problem) CHECK(p.c == 10);
}

TEST_CASE("evaluate_benchmark with a null generator") {
    Corpus problems = benchmark_corpus(3);
    FixedTextGenerator generator("this is not verilog");
    MockBackend backend(MockOutcome::sim_fail()); // nothing passes
    BenchmarkRun run = evaluate_benchmark(problems, generator, backend, 10, {1, 5, 10});
    for (const auto& [k, v] : run.report.pass_at) CHECK(v == 0.0);
}

TEST_CASE("scripted half-correct generator reproduces exact binomials") {
    Corpus problems = benchmark_corpus(4);
    // Candidate j passes iff j < 5; outcome keyed by the candidate unit id.
    MockBackend backend;
    for (const Sample& p : problems.samples) {
        for (int j = 0; j < 10; ++j) {
            backend.script(p.id + "#" + std::to_string(j),
                           j < 5 ? MockOutcome::pass() : MockOutcome::sim_fail());
        }
    }
    FixedTextGenerator generator("module stub; endmodule");
    BenchmarkRun run = evaluate_benchmark(problems, generator, backend, 10, {1, 5});
    CHECK(run.report.pass_at.at(1) == Catch::Approx(0.5).margin(1e-12));
    CHECK(run.report.pass_at.at(5) == Catch::Approx(1.0 - 1.0 / 252.0).margin(1e-12));

    // Aggregation equals direct pass_at_k on the induced counts.
    for (const auto& p : run.report.per_problem) {
        CHECK(p.c == 5);
        CHECK(pass_at_k(p.n, p.c, 1) == Catch::Approx(0.5));
    }
}

TEST_CASE("generator transport failures count candidates as incorrect") {
    Corpus problems = benchmark_corpus(2);
    int call = 0;
    ScriptedGenerator generator([&call](const std::string&, long long, const SamplingParams&) -> GenerationResult {
        if (++call % 2 == 0) throw transport_error("endpoint flaked");
        return {"module stub; endmodule", 3};
    });
    MockBackend backend;
    BenchmarkRun run = evaluate_benchmark(problems, generator, backend, 4, {1});
    CHECK(run.generator_failures == 4);
    for (const auto& p : run.report.per_problem) CHECK(p.c == 2);
}

TEST_CASE("evaluate_benchmark preconditions") {
    Corpus problems = benchmark_corpus(1);
    FixedTextGenerator generator("x");
    MockBackend backend;
    CHECK_THROWS_AS(evaluate_benchmark(problems, generator, backend, 5, {6}),
                    std::invalid_argument); // k > n
    CHECK_THROWS_AS(evaluate_benchmark(problems, generator, backend, 5, {}),
                    std::invalid_argument); // empty k list

    Corpus no_tb = problems;
    no_tb.samples[0].testbench.reset();
    CHECK_THROWS_AS(evaluate_benchmark(no_tb, generator, backend, 5, {1}),
                    std::invalid_argument);
}
