#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "veriforge/adaptive.hpp"
#include "veriforge/compression.hpp"
#include "veriforge/corpus.hpp"
#include "veriforge/dedup.hpp"
#include "veriforge/embedding.hpp"
#include "veriforge/errors.hpp"
#include "veriforge/judge.hpp"
#include "veriforge/quality.hpp"
#include "veriforge/verify.hpp"

namespace veriforge {

// Reference numbers quoted from published dataset/model evaluations are not
// reproducible at toolkit scale; reports label them instead of restating them
// as results.
inline const char* external_reference_note() {
    return "Note: published dataset-level compression ratios and model pass@k accuracies are "
           "external reference values; this toolkit reproduces the measurement protocol, not "
           "those numbers.";
}

struct PipelineConfig {
    struct Paths {
        std::string input;
        std::string output_dir = "out";
    } paths;

    struct Dedup {
        double threshold = 0.8;
        SimCombine combine = SimCombine::Or;
    } dedup;

    struct Quality {
        std::string judge = "stub"; // stub | http
        std::string judge_url;      // VERIFORGE_JUDGE_URL when empty
        std::string rules_file;     // empty -> default rule set
        std::size_t judge_workers = 4;
    } quality;

    struct Verify {
        std::string backend = "mock"; // mock | iverilog
        std::string mock_script;      // optional scripted outcomes for the mock backend
        std::size_t workers = 4;
        long long timeout_secs = 30;
        std::string fail_pattern = "FAIL|ERROR|MISMATCH";
    } verify;

    struct Eval {
        long long n = 10;
        std::vector<long long> k = {1, 5, 10};
        double temperature = 0.2;
        double top_p = 0.95;
    } eval;

    struct Adaptive {
        std::string classifier = "heuristic"; // heuristic | http
        std::string classifier_url;
        std::string templates_dir;
        ClassifierConfig thresholds;
    } adaptive;

    void validate() const {
        if (!(dedup.threshold > 0.0 && dedup.threshold <= 1.0))
            throw config_error("dedup.threshold must lie in (0,1]");
        if (verify.workers < 1) throw config_error("verify.workers must be >= 1");
        if (verify.timeout_secs < 1) throw config_error("verify.timeout_secs must be >= 1");
        if (eval.n < 1) throw config_error("eval.n must be >= 1");
        if (eval.k.empty()) throw config_error("eval.k must not be empty");
        for (long long k : eval.k) {
            if (k < 1 || k > eval.n)
                throw config_error("eval.k entries must satisfy 1 <= k <= n");
        }
        if (quality.judge != "stub" && quality.judge != "http")
            throw config_error("quality.judge must be 'stub' or 'http'");
        if (verify.backend != "mock" && verify.backend != "iverilog")
            throw config_error("verify.backend must be 'mock' or 'iverilog'");
        if (adaptive.classifier != "heuristic" && adaptive.classifier != "http")
            throw config_error("adaptive.classifier must be 'heuristic' or 'http'");
        if (adaptive.thresholds.s1 > adaptive.thresholds.s2)
            throw config_error("adaptive thresholds must satisfy s1 <= s2");
    }

    static PipelineConfig from_json(const json& j) {
        PipelineConfig cfg;
        if (j.contains("paths")) {
            const auto& p = j.at("paths");
            if (p.contains("input")) cfg.paths.input = p.at("input").get<std::string>();
            if (p.contains("output_dir")) cfg.paths.output_dir = p.at("output_dir").get<std::string>();
        }
        if (j.contains("dedup")) {
            const auto& d = j.at("dedup");
            if (d.contains("threshold")) cfg.dedup.threshold = d.at("threshold").get<double>();
            if (d.contains("combine"))
                cfg.dedup.combine = sim_combine_from_string(d.at("combine").get<std::string>());
        }
        if (j.contains("quality")) {
            const auto& q = j.at("quality");
            if (q.contains("judge")) cfg.quality.judge = q.at("judge").get<std::string>();
            if (q.contains("judge_url")) cfg.quality.judge_url = q.at("judge_url").get<std::string>();
            if (q.contains("rules_file")) cfg.quality.rules_file = q.at("rules_file").get<std::string>();
            if (q.contains("judge_workers"))
                cfg.quality.judge_workers = q.at("judge_workers").get<std::size_t>();
        }
        if (j.contains("verify")) {
            const auto& v = j.at("verify");
            if (v.contains("backend")) cfg.verify.backend = v.at("backend").get<std::string>();
            if (v.contains("mock_script")) cfg.verify.mock_script = v.at("mock_script").get<std::string>();
            if (v.contains("workers")) cfg.verify.workers = v.at("workers").get<std::size_t>();
            if (v.contains("timeout_secs")) cfg.verify.timeout_secs = v.at("timeout_secs").get<long long>();
            if (v.contains("fail_pattern")) cfg.verify.fail_pattern = v.at("fail_pattern").get<std::string>();
        }
        if (j.contains("eval")) {
            const auto& e = j.at("eval");
            if (e.contains("n")) cfg.eval.n = e.at("n").get<long long>();
            if (e.contains("k")) cfg.eval.k = e.at("k").get<std::vector<long long>>();
            if (e.contains("temperature")) cfg.eval.temperature = e.at("temperature").get<double>();
            if (e.contains("top_p")) cfg.eval.top_p = e.at("top_p").get<double>();
        }
        if (j.contains("adaptive")) {
            const auto& a = j.at("adaptive");
            if (a.contains("classifier")) cfg.adaptive.classifier = a.at("classifier").get<std::string>();
            if (a.contains("classifier_url"))
                cfg.adaptive.classifier_url = a.at("classifier_url").get<std::string>();
            if (a.contains("templates_dir"))
                cfg.adaptive.templates_dir = a.at("templates_dir").get<std::string>();
            if (a.contains("thresholds"))
                cfg.adaptive.thresholds = ClassifierConfig::from_json(a.at("thresholds"));
        }
        return cfg;
    }

    static PipelineConfig from_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open config file: " + path.string());
        try {
            return from_json(json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw config_error("malformed config file " + path.string() + ": " + e.what());
        }
    }

    json to_json() const {
        json j;
        j["paths"] = {{"input", paths.input}, {"output_dir", paths.output_dir}};
        j["dedup"] = {{"threshold", dedup.threshold},
                      {"combine", dedup.combine == SimCombine::Or ? "or" : "and"}};
        j["quality"] = {{"judge", quality.judge},
                        {"rules_file", quality.rules_file},
                        {"judge_workers", quality.judge_workers}};
        j["verify"] = {{"backend", verify.backend},
                       {"mock_script", verify.mock_script},
                       {"workers", verify.workers},
                       {"timeout_secs", verify.timeout_secs},
                       {"fail_pattern", verify.fail_pattern}};
        json kj = json::array();
        for (long long k : eval.k) kj.push_back(k);
        j["eval"] = {{"n", eval.n}, {"k", kj}, {"temperature", eval.temperature},
                     {"top_p", eval.top_p}};
        j["adaptive"] = {{"classifier", adaptive.classifier},
                         {"templates_dir", adaptive.templates_dir}};
        return j;
    }
};

// ---------------------------------------------------------------------------
// Component factories shared by the pipeline and the CLI subcommands.
// ---------------------------------------------------------------------------

inline std::unique_ptr<SimulatorBackend> make_backend(const PipelineConfig::Verify& cfg) {
    if (cfg.backend == "iverilog") return std::make_unique<IcarusBackend>();
    if (!cfg.mock_script.empty())
        return std::make_unique<MockBackend>(MockBackend::from_file(cfg.mock_script));
    return std::make_unique<MockBackend>();
}

inline std::unique_ptr<JudgeClient> make_judge(const PipelineConfig::Quality& cfg) {
    if (cfg.judge == "http") {
        std::string url = cfg.judge_url;
        if (url.empty()) {
            if (const char* env = std::getenv("VERIFORGE_JUDGE_URL")) url = env;
        }
        if (url.empty())
            throw config_error("judge 'http' requires a URL (--judge-url or VERIFORGE_JUDGE_URL)");
        return std::make_unique<HttpJudge>(url);
    }
    return std::make_unique<StubJudge>();
}

inline std::unique_ptr<DifficultyClassifier> make_classifier(const PipelineConfig::Adaptive& cfg) {
    if (cfg.classifier == "http") {
        std::string url = cfg.classifier_url;
        if (url.empty()) {
            if (const char* env = std::getenv("VERIFORGE_GEN_URL")) url = env;
        }
        if (url.empty())
            throw config_error("classifier 'http' requires a URL");
        return std::make_unique<HttpClassifier>(url);
    }
    return std::make_unique<HeuristicClassifier>(cfg.thresholds);
}

// ---------------------------------------------------------------------------
// Funnel report
// ---------------------------------------------------------------------------

struct FunnelReport {
    std::vector<StageRecord> rows;
    std::size_t undetermined = 0; // judge transport failures, fail-open retains

    double cumulative() const {
        if (rows.empty() || rows.front().input == 0) return 0.0;
        return 1.0 - static_cast<double>(rows.back().output) /
                         static_cast<double>(rows.front().input);
    }

    json to_json() const {
        json j;
        j["stages"] = json::array();
        for (const auto& r : rows) {
            json row;
            row["stage"] = r.stage;
            row["in"] = r.input;
            row["out"] = r.output;
            row["reduction"] = r.reduction();
            j["stages"].push_back(row);
        }
        j["cumulative_reduction"] = cumulative();
        j["quality_undetermined"] = undetermined;
        return j;
    }

    static FunnelReport from_json(const json& j) {
        FunnelReport f;
        for (const auto& row : j.at("stages")) {
            f.rows.push_back({row.at("stage").get<std::string>(),
                              row.at("in").get<std::size_t>(),
                              row.at("out").get<std::size_t>()});
        }
        if (j.contains("quality_undetermined"))
            f.undetermined = j.at("quality_undetermined").get<std::size_t>();
        return f;
    }

    std::string format() const {
        std::ostringstream out;
        out << std::left << std::setw(10) << "stage" << std::right << std::setw(10) << "in"
            << std::setw(10) << "out" << std::setw(14) << "reduction" << '\n';
        for (const auto& r : rows) {
            out << std::left << std::setw(10) << r.stage << std::right << std::setw(10) << r.input
                << std::setw(10) << r.output << std::setw(13) << std::fixed
                << std::setprecision(1) << r.reduction() * 100.0 << "%" << '\n';
        }
        out << "cumulative reduction: " << std::fixed << std::setprecision(1)
            << cumulative() * 100.0 << "%\n";
        if (undetermined > 0)
            out << "quality: " << undetermined << " sample(s) undetermined (judge unavailable, retained)\n";
        return out.str();
    }
};

// ---------------------------------------------------------------------------
// Pipeline runner
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& pipeline_stages() {
    static const std::vector<std::string> stages = {"ingest", "compile", "dedup", "quality", "verify"};
    return stages;
}

inline std::filesystem::path stage_artifact(const std::filesystem::path& dir, std::size_t idx) {
    return dir / ("corpus_0" + std::to_string(idx + 1) + "_" + pipeline_stages()[idx] + ".jsonl");
}

namespace detail {

inline void write_json_artifact(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write artifact: " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace detail

// Executes ingest -> compile -> dedup -> quality -> verify, writing each
// stage's corpus before the next stage starts so runs resume per stage.
// Returns 0 on success, 1 on stage failure (partial artifacts retained).
inline int run_pipeline(const PipelineConfig& config, std::ostream& log,
                        const std::string& from_stage = "ingest") {
    try {
        config.validate();
    } catch (const config_error& e) {
        log << "config error: " << e.what() << '\n';
        return 2;
    }

    const auto& stages = pipeline_stages();
    std::size_t start_idx = 0;
    while (start_idx < stages.size() && stages[start_idx] != from_stage) ++start_idx;
    if (start_idx == stages.size()) {
        log << "config error: unknown stage '" << from_stage << "'\n";
        return 2;
    }

    std::filesystem::path out_dir(config.paths.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    log << "effective config:\n" << config.to_json().dump(2) << '\n';

    FunnelReport funnel;
    Corpus corpus;
    std::string current = "ingest";
    try {
        if (start_idx == 0) {
            corpus = load_corpus(config.paths.input);
            funnel.rows = corpus.stage_log;
            save_corpus(corpus, stage_artifact(out_dir, 0));
            detail::write_json_artifact(out_dir / "funnel.json", funnel.to_json());
        } else {
            // Resume: previous stage's corpus plus the log recorded so far.
            std::ifstream in(out_dir / "funnel.json");
            if (!in) throw io_error("cannot resume: missing funnel.json in " + out_dir.string());
            funnel = FunnelReport::from_json(json::parse(in));
            corpus = load_corpus(stage_artifact(out_dir, start_idx - 1));
            corpus.stage_log.clear();
            for (const auto& r : funnel.rows) {
                corpus.stage_log.push_back(r);
                if (r.stage == stages[start_idx - 1]) break;
            }
        }

        for (std::size_t idx = std::max<std::size_t>(start_idx, 1); idx < stages.size(); ++idx) {
            current = stages[idx];
            log << "stage " << current << ": " << corpus.size() << " sample(s) in\n";

            if (current == "compile") {
                auto backend = make_backend(config.verify);
                CompileCheckResult result = compile_check(corpus, *backend, config.verify.workers);
                if (result.warning) log << "warning: " << *result.warning << '\n';
                corpus = std::move(result.corpus);
            } else if (current == "dedup") {
                if (!corpus.empty()) {
                    TrigramHashEmbedder embedder;
                    corpus = deduplicate(corpus, embedder, config.dedup.threshold, config.dedup.combine);
                } else {
                    corpus = record_stage(corpus, "dedup", corpus);
                }
            } else if (current == "quality") {
                if (!corpus.empty()) {
                    auto judge = make_judge(config.quality);
                    LintRuleSet rules = config.quality.rules_file.empty()
                                            ? LintRuleSet::defaults()
                                            : LintRuleSet::from_file(config.quality.rules_file);
                    QualityFilterResult result =
                        quality_filter(corpus, *judge, rules, config.quality.judge_workers);
                    funnel.undetermined = result.undetermined;
                    if (result.undetermined > 0)
                        log << "warning: " << result.undetermined
                            << " sample(s) undetermined (judge unavailable), retained\n";
                    corpus = std::move(result.corpus);
                } else {
                    corpus = record_stage(corpus, "quality", corpus);
                }
            } else if (current == "verify") {
                auto backend = make_backend(config.verify);
                VerifyOptions options;
                options.fail_pattern = config.verify.fail_pattern;
                VerifyCorpusResult result =
                    verify_corpus(corpus, *backend, config.verify.workers,
                                  std::chrono::seconds(config.verify.timeout_secs), options);
                if (result.summary.warning) log << "warning: " << *result.summary.warning << '\n';
                json results_json = json::array();
                for (const auto& r : result.results) results_json.push_back(r.to_json());
                detail::write_json_artifact(out_dir / "verify_results.json", results_json);
                detail::write_json_artifact(out_dir / "verify_summary.json", result.summary.to_json());
                corpus = std::move(result.corpus);
            }

            funnel.rows = corpus.stage_log;
            save_corpus(corpus, stage_artifact(out_dir, idx));
            detail::write_json_artifact(out_dir / "funnel.json", funnel.to_json());
        }

        if (!corpus.empty()) {
            CompressionReport cr = compression_ratio(corpus, FieldSelector::solution_only());
            detail::write_json_artifact(out_dir / "cr_report.json", cr.to_json());
        }
    } catch (const std::exception& e) {
        log << "stage '" << current << "' failed: " << e.what() << '\n';
        return 1;
    }

    log << '\n' << funnel.format();
    return 0;
}

// ---------------------------------------------------------------------------
// Report over an output directory's artifacts.
// ---------------------------------------------------------------------------

inline std::string report(const std::filesystem::path& output_dir) {
    std::ostringstream out;
    std::vector<std::string> missing;

    auto read_json = [&](const char* name) -> std::optional<json> {
        std::ifstream in(output_dir / name);
        if (!in) return std::nullopt;
        return json::parse(in);
    };

    bool any = false;
    if (auto funnel = read_json("funnel.json")) {
        out << "== filtering funnel ==\n" << FunnelReport::from_json(*funnel).format() << '\n';
        any = true;
    } else {
        missing.push_back("funnel.json (pipeline stages)");
    }

    if (auto summary = read_json("verify_summary.json")) {
        out << "== verification ==\n";
        out << "total " << summary->at("total").get<std::size_t>() << ", passed "
            << summary->at("passed").get<std::size_t>() << ", rejection rate " << std::fixed
            << std::setprecision(3) << summary->at("rejection_rate").get<double>() << "\n";
        if (summary->contains("warning"))
            out << "warning: " << summary->at("warning").get<std::string>() << '\n';
        out << '\n';
        any = true;
    }

    if (auto cr = read_json("cr_report.json")) {
        out << "== compression ratio ==\n";
        out << "CR " << std::fixed << std::setprecision(2) << cr->at("cr").get<double>()
            << " (" << cr->at("raw_bytes").get<std::uint64_t>() << " -> "
            << cr->at("compressed_bytes").get<std::uint64_t>() << " bytes, gzip level "
            << cr->at("gzip_level").get<int>() << ")\n";
        out << "CR-POS " << std::setprecision(2) << cr->at("cr_pos").get<double>()
            << " [" << cr->at("cr_pos_interpretation").get<std::string>() << "]\n\n";
        any = true;
    } else {
        missing.push_back("cr_report.json (compression analysis)");
    }

    if (auto passk = read_json("passk.json")) {
        out << "== pass@k ==\n";
        for (const auto& [k, v] : passk->at("pass_at").items()) {
            out << "pass@" << k << " = " << std::fixed << std::setprecision(5)
                << v.get<double>() << '\n';
        }
        out << '\n';
        any = true;
    } else {
        missing.push_back("passk.json (benchmark evaluation)");
    }

    if (auto eff = read_json("efficiency.json")) {
        out << "== token efficiency ==\n";
        for (const auto& row : *eff) {
            long long pct = row.at("delta_pct").get<long long>();
            out << std::left << std::setw(12) << row.at("mode").get<std::string>() << std::right
                << std::setw(12) << std::fixed << std::setprecision(1)
                << row.at("mean_tokens").get<double>() << "  " << (pct >= 0 ? "+" : "") << pct
                << "%" << (row.at("baseline").get<bool>() ? "  (baseline)" : "") << '\n';
        }
        out << '\n';
        any = true;
    } else {
        missing.push_back("efficiency.json (mode comparison)");
    }

    if (!any) {
        out << "no artifacts found in " << output_dir.string() << '\n';
    } else if (!missing.empty()) {
        out << "absent artifacts:\n";
        for (const auto& m : missing) out << "  - " << m << '\n';
    }
    out << '\n' << external_reference_note() << '\n';
    return out.str();
}

} // namespace veriforge
