#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "veriforge/corpus.hpp"
#include "veriforge/errors.hpp"
#include "veriforge/evalkit.hpp"
#include "veriforge/generation.hpp"
#include "veriforge/util.hpp"
#include "veriforge/verify.hpp"

namespace veriforge {

enum class Difficulty { Easy, Medium, Hard };
enum class PromptMode { Direct, StandardReasoning, ExtendedReasoning };

inline const char* to_string(Difficulty d) {
    switch (d) {
        case Difficulty::Easy: return "easy";
        case Difficulty::Medium: return "medium";
        case Difficulty::Hard: return "hard";
    }
    return "easy";
}

inline const char* to_string(PromptMode m) {
    switch (m) {
        case PromptMode::Direct: return "direct";
        case PromptMode::StandardReasoning: return "standard_reasoning";
        case PromptMode::ExtendedReasoning: return "extended_reasoning";
    }
    return "direct";
}

inline Difficulty difficulty_from_string(const std::string& s) {
    if (s == "easy" || s == "Easy") return Difficulty::Easy;
    if (s == "medium" || s == "Medium") return Difficulty::Medium;
    if (s == "hard" || s == "Hard") return Difficulty::Hard;
    throw std::invalid_argument("unknown difficulty '" + s + "'");
}

struct ReasoningPlan {
    Difficulty difficulty = Difficulty::Easy;
    PromptMode prompt_mode = PromptMode::Direct;
    long long max_new_tokens = 512;
};

// The fixed difficulty-to-budget mapping: direct generation gets 512 new
// tokens, standard reasoning 1280, extended reasoning 4096.
inline ReasoningPlan plan_for(Difficulty difficulty) {
    switch (difficulty) {
        case Difficulty::Easy: return {Difficulty::Easy, PromptMode::Direct, 512};
        case Difficulty::Medium: return {Difficulty::Medium, PromptMode::StandardReasoning, 1280};
        case Difficulty::Hard: return {Difficulty::Hard, PromptMode::ExtendedReasoning, 4096};
    }
    return {Difficulty::Easy, PromptMode::Direct, 512};
}

// ---------------------------------------------------------------------------
// Difficulty classification
// ---------------------------------------------------------------------------

// Versioned thresholds and feature weights for the built-in heuristic. The
// score grows with statement length, structural keywords (state machines,
// pipelines, FIFOs, arbiters, multi-module designs) and declared ports.
struct ClassifierConfig {
    std::string version = "v1";
    double s1 = 6.0;   // score < s1  -> Easy
    double s2 = 30.0;  // score < s2  -> Medium, else Hard
    double word_weight = 0.125;
    double keyword_weight = 5.0;
    double port_weight = 1.0;
    std::vector<std::string> keywords = {"fsm",  "state",   "pipeline",
                                         "fifo", "arbiter", "multi-module"};

    static ClassifierConfig from_json(const json& j) {
        ClassifierConfig cfg;
        if (j.contains("version")) cfg.version = j.at("version").get<std::string>();
        if (j.contains("s1")) cfg.s1 = j.at("s1").get<double>();
        if (j.contains("s2")) cfg.s2 = j.at("s2").get<double>();
        if (j.contains("word_weight")) cfg.word_weight = j.at("word_weight").get<double>();
        if (j.contains("keyword_weight")) cfg.keyword_weight = j.at("keyword_weight").get<double>();
        if (j.contains("port_weight")) cfg.port_weight = j.at("port_weight").get<double>();
        if (j.contains("keywords")) cfg.keywords = j.at("keywords").get<std::vector<std::string>>();
        if (cfg.s1 > cfg.s2) throw config_error("classifier thresholds must satisfy s1 <= s2");
        return cfg;
    }

    static ClassifierConfig from_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open classifier config: " + path.string());
        return from_json(json::parse(in));
    }
};

inline double complexity_score(std::string_view problem, const ClassifierConfig& cfg = {}) {
    if (problem.empty()) return 0.0;
    std::string lowered = to_lower(problem);

    double words = static_cast<double>(whitespace_token_count(problem));

    double keyword_hits = 0.0;
    for (const std::string& kw : cfg.keywords) {
        std::size_t pos = 0;
        while ((pos = lowered.find(kw, pos)) != std::string::npos) {
            keyword_hits += 1.0;
            pos += kw.size();
        }
    }

    double ports = 0.0;
    static const std::regex port_re("\\b(input|output|inout)\\b", std::regex::icase);
    auto begin = std::cregex_iterator(lowered.data(), lowered.data() + lowered.size(), port_re);
    ports = static_cast<double>(std::distance(begin, std::cregex_iterator()));

    return words * cfg.word_weight + keyword_hits * cfg.keyword_weight + ports * cfg.port_weight;
}

// Deterministic stand-in for a trained difficulty model; empty text is Easy.
inline Difficulty heuristic_classify(std::string_view problem, const ClassifierConfig& cfg = {}) {
    double score = complexity_score(problem, cfg);
    if (score < cfg.s1) return Difficulty::Easy;
    if (score < cfg.s2) return Difficulty::Medium;
    return Difficulty::Hard;
}

// Total classifier interface; external implementations may be model-backed.
class DifficultyClassifier {
public:
    virtual ~DifficultyClassifier() = default;
    virtual Difficulty classify(const std::string& problem) = 0;
};

class HeuristicClassifier final : public DifficultyClassifier {
public:
    HeuristicClassifier() = default;
    explicit HeuristicClassifier(ClassifierConfig cfg) : cfg_(std::move(cfg)) {}
    Difficulty classify(const std::string& problem) override {
        return heuristic_classify(problem, cfg_);
    }

private:
    ClassifierConfig cfg_;
};

class ScriptedClassifier final : public DifficultyClassifier {
public:
    explicit ScriptedClassifier(Difficulty fixed) : fixed_(fixed) {}
    Difficulty classify(const std::string&) override { return fixed_; }

private:
    Difficulty fixed_;
};

// POSTs {"problem"} to <url>/classify, expects {"difficulty":"easy|medium|hard"}.
class HttpClassifier final : public DifficultyClassifier {
public:
    explicit HttpClassifier(std::string url, std::chrono::seconds timeout = std::chrono::seconds(30))
        : url_(std::move(url)), timeout_(timeout) {}

    Difficulty classify(const std::string& problem) override {
        auto [host, path_prefix] = HttpJudge::split_url(url_);
        httplib::Client client(host);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(timeout_.count(), 0);
        json body;
        body["problem"] = problem;
        auto res = client.Post(path_prefix + "/classify", body.dump(), "application/json");
        if (!res) throw transport_error("classifier endpoint unreachable: " + url_);
        if (res->status != 200)
            throw transport_error("classifier endpoint returned HTTP " + std::to_string(res->status));
        try {
            return difficulty_from_string(json::parse(res->body).at("difficulty").get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw transport_error(std::string("malformed classifier response: ") + e.what());
        }
    }

private:
    std::string url_;
    std::chrono::seconds timeout_;
};

// ---------------------------------------------------------------------------
// Prompt templates
// ---------------------------------------------------------------------------

// Versioned text assets for the three modes. The direct template deliberately
// contains no reasoning instruction. "{problem}" substitutes the task text.
struct PromptTemplates {
    std::string version = "v1";
    std::string direct =
        "Write synthesizable Verilog for the task below. Output only the Verilog code.\n"
        "\n"
        "Task:\n"
        "{problem}\n";
    std::string standard =
        "Solve the Verilog design task below. First give brief reasoning about the\n"
        "interface and behavior, then output the complete Verilog code.\n"
        "\n"
        "Task:\n"
        "{problem}\n";
    std::string extended =
        "Solve the Verilog design task below. Decompose it in detail: interface,\n"
        "state, datapath, timing, and edge cases. Provide detailed step-by-step\n"
        "reasoning, then output the complete Verilog code.\n"
        "\n"
        "Task:\n"
        "{problem}\n";

    static PromptTemplates defaults() { return {}; }

    // Reads direct.txt / standard.txt / extended.txt; missing files keep the
    // built-in text.
    static PromptTemplates from_directory(const std::filesystem::path& dir) {
        PromptTemplates t;
        t.version = dir.string();
        auto load = [&dir](const char* name, std::string& slot) {
            std::ifstream in(dir / name, std::ios::binary);
            if (!in) return;
            std::ostringstream ss;
            ss << in.rdbuf();
            slot = ss.str();
        };
        load("direct.txt", t.direct);
        load("standard.txt", t.standard);
        load("extended.txt", t.extended);
        return t;
    }

    std::string render(PromptMode mode, std::string_view problem) const {
        const std::string* tpl = &direct;
        if (mode == PromptMode::StandardReasoning) tpl = &standard;
        if (mode == PromptMode::ExtendedReasoning) tpl = &extended;
        std::string out = *tpl;
        const std::string placeholder = "{problem}";
        if (auto pos = out.find(placeholder); pos != std::string::npos) {
            out.replace(pos, placeholder.size(), problem);
        } else {
            out.append(problem);
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

// Generation failed after a plan was chosen. The plan rides along so callers
// can retry or downgrade explicitly; there is no silent mode change.
class dispatch_error : public std::runtime_error {
public:
    dispatch_error(ReasoningPlan plan, const std::string& what)
        : std::runtime_error(what), plan_(plan) {}
    const ReasoningPlan& plan() const { return plan_; }

private:
    ReasoningPlan plan_;
};

struct DispatchResult {
    std::string text;
    ReasoningPlan plan;
    long long tokens_used = 0;
};

// Generate with a pre-selected plan (the forced-mode path).
inline DispatchResult dispatch_with_plan(const Sample& problem,
                                         const ReasoningPlan& plan,
                                         GenerationClient& client,
                                         const PromptTemplates& templates = PromptTemplates::defaults(),
                                         const SamplingParams& sampling = {}) {
    if (problem.problem.empty())
        throw std::invalid_argument("dispatch: problem '" + problem.id + "' has empty text");
    std::string prompt = templates.render(plan.prompt_mode, problem.problem);
    GenerationResult gen;
    try {
        gen = client.generate(prompt, plan.max_new_tokens, sampling);
    } catch (const transport_error& e) {
        throw dispatch_error(plan, e.what());
    }
    // Budget ceiling: a client reporting more completion tokens than the plan
    // allows is clamped, exactly as a max_new_tokens cutoff would.
    if (gen.tokens_used > plan.max_new_tokens) {
        gen.text = truncate_to_tokens(gen.text, plan.max_new_tokens);
        gen.tokens_used = plan.max_new_tokens;
    }
    return {std::move(gen.text), plan, gen.tokens_used};
}

// Classify, plan, build the mode-specific prompt, and generate within budget.
inline DispatchResult dispatch(const Sample& problem,
                               DifficultyClassifier& classifier,
                               GenerationClient& client,
                               const PromptTemplates& templates = PromptTemplates::defaults(),
                               const SamplingParams& sampling = {}) {
    if (problem.problem.empty())
        throw std::invalid_argument("dispatch: problem '" + problem.id + "' has empty text");
    ReasoningPlan plan = plan_for(classifier.classify(problem.problem));
    return dispatch_with_plan(problem, plan, client, templates, sampling);
}

// ---------------------------------------------------------------------------
// Mode comparison
// ---------------------------------------------------------------------------

struct ModeComparison {
    struct Row {
        std::string mode; // adaptive, easy, medium, hard
        double pass_at_1 = 0.0;
        TokenUsage tokens;
    };
    std::vector<Row> rows;
    EfficiencyReport efficiency;
    long long errors = 0;

    std::string format() const {
        if (rows.empty()) return "(no problems)\n";
        std::ostringstream out;
        out << std::left << std::setw(12) << "mode" << std::right << std::setw(10) << "pass@1"
            << std::setw(14) << "mean_tokens" << '\n';
        for (const auto& r : rows) {
            out << std::left << std::setw(12) << r.mode << std::right << std::setw(10)
                << std::fixed << std::setprecision(3) << r.pass_at_1 << std::setw(14)
                << std::setprecision(1) << r.tokens.mean() << '\n';
        }
        out << '\n' << efficiency.format();
        return out.str();
    }
};

struct CompareOptions {
    PromptTemplates templates = PromptTemplates::defaults();
    SamplingParams sampling;
    std::chrono::milliseconds timeout = std::chrono::seconds(30);
    VerifyOptions verify;
};

// Runs every problem under forced Easy/Medium/Hard and under adaptive routing,
// verifies each output, and reports pass@1 plus token deltas vs adaptive.
inline ModeComparison compare_modes(const Corpus& problems,
                                    DifficultyClassifier& classifier,
                                    GenerationClient& client,
                                    SimulatorBackend& backend,
                                    const CompareOptions& options = {}) {
    ModeComparison comparison;
    if (problems.empty()) return comparison; // empty table

    struct Acc {
        long long correct = 0;
        TokenUsage tokens;
    };
    std::map<std::string, Acc> acc;
    const std::vector<std::pair<std::string, std::optional<Difficulty>>> modes = {
        {"adaptive", std::nullopt},
        {"easy", Difficulty::Easy},
        {"medium", Difficulty::Medium},
        {"hard", Difficulty::Hard},
    };

    for (const Sample& problem : problems.samples) {
        for (const auto& [mode, forced] : modes) {
            DispatchResult result;
            try {
                result = forced ? dispatch_with_plan(problem, plan_for(*forced), client,
                                                     options.templates, options.sampling)
                                : dispatch(problem, classifier, client, options.templates,
                                           options.sampling);
            } catch (const dispatch_error&) {
                ++comparison.errors;
                acc[mode].tokens.per_problem.push_back(0.0);
                continue;
            }
            acc[mode].tokens.per_problem.push_back(static_cast<double>(result.tokens_used));
            if (!result.text.empty() && problem.testbench && !problem.testbench->empty()) {
                Sample candidate;
                candidate.id = problem.id + "@" + mode;
                candidate.problem = problem.problem;
                candidate.solution = result.text;
                candidate.testbench = problem.testbench;
                if (verify_sample(candidate, backend, options.timeout, options.verify).status ==
                    VerifyStatus::Pass) {
                    ++acc[mode].correct;
                }
            }
        }
    }

    std::map<std::string, TokenUsage> usage_by_mode;
    for (const auto& [mode, forced] : modes) {
        ModeComparison::Row row;
        row.mode = mode;
        row.pass_at_1 = static_cast<double>(acc[mode].correct) /
                        static_cast<double>(problems.samples.size());
        row.tokens = acc[mode].tokens;
        usage_by_mode[mode] = acc[mode].tokens;
        comparison.rows.push_back(std::move(row));
    }
    comparison.efficiency = efficiency_report(usage_by_mode, "adaptive");
    return comparison;
}

} // namespace veriforge
