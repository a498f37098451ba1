#pragma once

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "veriforge/corpus.hpp"
#include "veriforge/generation.hpp"
#include "veriforge/passk.hpp"
#include "veriforge/util.hpp"
#include "veriforge/verify.hpp"

namespace veriforge {

struct ProblemOutcome {
    std::string id;
    long long n = 0;
    long long c = 0;
};

struct PassAtKReport {
    std::vector<ProblemOutcome> per_problem;
    std::map<long long, double> pass_at; // k -> mean over problems

    json to_json() const {
        json j;
        j["per_problem"] = json::array();
        for (const auto& p : per_problem) {
            json row;
            row["id"] = p.id;
            row["n"] = p.n;
            row["c"] = p.c;
            j["per_problem"].push_back(row);
        }
        j["pass_at"] = json::object();
        for (const auto& [k, v] : pass_at) j["pass_at"][std::to_string(k)] = v;
        return j;
    }
};

// Generated-token accounting: one entry per problem. Stub generators feed
// whitespace-token counts; real clients report their tokenizer's usage.
struct TokenUsage {
    std::vector<double> per_problem;

    double mean() const {
        if (per_problem.empty()) throw std::invalid_argument("TokenUsage: empty usage list");
        return std::accumulate(per_problem.begin(), per_problem.end(), 0.0) /
               static_cast<double>(per_problem.size());
    }

    // Signed relative difference of means: (self - base) / base.
    double relative_to(const TokenUsage& baseline) const {
        double base = baseline.mean();
        if (base == 0.0) throw std::invalid_argument("TokenUsage: baseline mean is zero");
        return (mean() - base) / base;
    }

    static TokenUsage from_mean(double mean_value) { return {{mean_value}}; }
};

// ---------------------------------------------------------------------------
// Benchmark evaluation: n candidates per problem, verified against the
// benchmark-provided testbench; c = pass count.
// ---------------------------------------------------------------------------

struct EvaluateOptions {
    SamplingParams sampling;          // temperature 0.2, top_p 0.95
    long long max_new_tokens = 4096;
    std::chrono::milliseconds timeout = std::chrono::seconds(30);
    VerifyOptions verify;
};

struct BenchmarkRun {
    PassAtKReport report;
    TokenUsage tokens;                // per-problem mean completion tokens per candidate
    long long generator_failures = 0; // candidates counted incorrect due to client errors
};

inline BenchmarkRun evaluate_benchmark(const Corpus& problems,
                                       GenerationClient& generator,
                                       SimulatorBackend& backend,
                                       long long n,
                                       const std::vector<long long>& k_list,
                                       const EvaluateOptions& options = {}) {
    if (n < 1) throw std::invalid_argument("evaluate_benchmark: n must be >= 1");
    if (k_list.empty()) throw std::invalid_argument("evaluate_benchmark: k list is empty");
    for (long long k : k_list) {
        if (k < 1 || k > n)
            throw std::invalid_argument("evaluate_benchmark: every k must satisfy 1 <= k <= n");
    }
    for (const Sample& p : problems.samples) {
        if (!p.testbench || p.testbench->empty())
            throw std::invalid_argument("evaluate_benchmark: problem '" + p.id + "' has no testbench");
    }

    BenchmarkRun run;
    for (const Sample& problem : problems.samples) {
        long long correct = 0;
        double token_sum = 0.0;
        for (long long j = 0; j < n; ++j) {
            GenerationResult gen;
            try {
                gen = generator.generate(problem.problem, options.max_new_tokens, options.sampling);
            } catch (const transport_error&) {
                ++run.generator_failures;
                continue; // candidate counts as incorrect
            }
            token_sum += static_cast<double>(gen.tokens_used);
            if (gen.text.empty()) continue;
            Sample candidate;
            candidate.id = problem.id + "#" + std::to_string(j);
            candidate.problem = problem.problem;
            candidate.solution = gen.text;
            candidate.testbench = problem.testbench;
            VerificationResult vr = verify_sample(candidate, backend, options.timeout, options.verify);
            if (vr.status == VerifyStatus::Pass) ++correct;
        }
        run.report.per_problem.push_back({problem.id, n, correct});
        run.tokens.per_problem.push_back(token_sum / static_cast<double>(n));
    }

    for (long long k : k_list) {
        double sum = 0.0;
        for (const auto& p : run.report.per_problem) sum += pass_at_k(p.n, p.c, k);
        run.report.pass_at[k] = run.report.per_problem.empty()
                                    ? 0.0
                                    : sum / static_cast<double>(run.report.per_problem.size());
    }
    return run;
}

// ---------------------------------------------------------------------------
// Token-efficiency report: mean tokens per mode with whole-percent deltas
// against a baseline mode.
// ---------------------------------------------------------------------------

struct EfficiencyRow {
    std::string mode;
    double mean_tokens = 0.0;
    long long delta_pct = 0; // vs baseline, rounded to whole percent
    bool is_baseline = false;
};

struct EfficiencyReport {
    std::vector<EfficiencyRow> rows; // baseline first

    std::string format() const {
        std::ostringstream out;
        out << std::left << std::setw(12) << "mode" << std::right << std::setw(14)
            << "mean_tokens" << std::setw(10) << "delta" << '\n';
        for (const auto& r : rows) {
            std::ostringstream delta;
            delta << (r.delta_pct >= 0 ? "+" : "") << r.delta_pct << "%";
            out << std::left << std::setw(12) << r.mode << std::right << std::setw(14)
                << std::fixed << std::setprecision(1) << r.mean_tokens << std::setw(10)
                << delta.str();
            if (r.is_baseline) out << "  (baseline)";
            out << '\n';
        }
        return out.str();
    }

    json to_json() const {
        json j = json::array();
        for (const auto& r : rows) {
            json row;
            row["mode"] = r.mode;
            row["mean_tokens"] = r.mean_tokens;
            row["delta_pct"] = r.delta_pct;
            row["baseline"] = r.is_baseline;
            j.push_back(row);
        }
        return j;
    }
};

inline EfficiencyReport efficiency_report(const std::map<std::string, TokenUsage>& modes,
                                          const std::string& baseline) {
    auto base_it = modes.find(baseline);
    if (base_it == modes.end())
        throw std::invalid_argument("efficiency_report: baseline mode '" + baseline + "' not present");
    for (const auto& [mode, usage] : modes) {
        if (usage.per_problem.empty())
            throw std::invalid_argument("efficiency_report: mode '" + mode + "' has an empty usage list");
    }

    EfficiencyReport report;
    report.rows.push_back({baseline, base_it->second.mean(), 0, true});
    for (const auto& [mode, usage] : modes) {
        if (mode == baseline) continue;
        long long pct = round_percent(usage.relative_to(base_it->second));
        report.rows.push_back({mode, usage.mean(), pct, false});
    }
    return report;
}

} // namespace veriforge
