// veriforge - Verilog corpus curation, verification, and evaluation toolkit.
// Subcommands cover the pipeline stages individually plus an end-to-end
// `pipeline` runner, benchmark evaluation, and difficulty-routed generation.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "veriforge/veriforge.hpp"

namespace {

using namespace veriforge;

std::unique_ptr<GenerationClient> make_generator(const std::string& mode, const Corpus& problems,
                                                 const std::string& url_flag) {
    if (mode == "http") {
        std::string url = url_flag;
        if (url.empty()) {
            if (const char* env = std::getenv("VERIFORGE_GEN_URL")) url = env;
        }
        if (url.empty())
            throw config_error("generator 'http' requires a URL (--gen-url or VERIFORGE_GEN_URL)");
        return std::make_unique<HttpGenerator>(url);
    }
    if (mode == "stub") return std::make_unique<ReferenceSolutionGenerator>(problems);
    throw config_error("unknown generator '" + mode + "' (expected 'stub' or 'http')");
}

void print_stage_log(const Corpus& corpus) {
    for (const auto& r : corpus.stage_log) {
        std::cout << r.stage << ": " << r.input << " -> " << r.output << "\n";
    }
}

void write_artifact(const std::filesystem::path& path, const json& j) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Verilog corpus curation, functional verification, and evaluation toolkit"};
    app.require_subcommand(1);

    // ---- ingest ----
    auto* ingest = app.add_subcommand("ingest", "Load, validate, and canonicalize a corpus file");
    std::string ingest_in, ingest_out;
    ingest->add_option("-i,--input", ingest_in, "corpus file (one record per line)")->required();
    ingest->add_option("-o,--output", ingest_out, "canonicalized output corpus")->required();

    // ---- compile-check ----
    auto* compile = app.add_subcommand("compile-check", "Retain samples whose solution compiles");
    std::string cc_in, cc_out, cc_backend = "iverilog", cc_mock_script;
    std::size_t cc_workers = 4;
    compile->add_option("-i,--input", cc_in)->required();
    compile->add_option("-o,--output", cc_out)->required();
    compile->add_option("--backend", cc_backend, "iverilog or mock")
        ->check(CLI::IsMember({"iverilog", "mock"}));
    compile->add_option("--mock-script", cc_mock_script, "scripted outcomes for the mock backend");
    compile->add_option("--workers", cc_workers)->check(CLI::PositiveNumber);

    // ---- dedup ----
    auto* dedup_cmd = app.add_subcommand("dedup", "Per-domain redundancy elimination");
    std::string dd_in, dd_out, dd_combine = "or";
    double dd_threshold = 0.8;
    dedup_cmd->add_option("-i,--input", dd_in)->required();
    dedup_cmd->add_option("-o,--output", dd_out)->required();
    dedup_cmd->add_option("--sim-threshold", dd_threshold, "similarity threshold in (0,1]");
    dedup_cmd->add_option("--sim-combine", dd_combine, "or | and")
        ->check(CLI::IsMember({"or", "and"}));

    // ---- quality ----
    auto* quality_cmd = app.add_subcommand("quality", "Style lint plus judge-based quality gate");
    std::string q_in, q_out, q_judge = "stub", q_judge_url, q_rules, q_cr_out;
    quality_cmd->add_option("-i,--input", q_in)->required();
    quality_cmd->add_option("-o,--output", q_out)->required();
    quality_cmd->add_option("--judge", q_judge, "stub or http")
        ->check(CLI::IsMember({"stub", "http"}));
    quality_cmd->add_option("--judge-url", q_judge_url, "judge endpoint (or VERIFORGE_JUDGE_URL)");
    quality_cmd->add_option("--rules", q_rules, "versioned rules file");
    quality_cmd->add_option("--cr-report", q_cr_out, "write the compression-ratio record here");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "Simulate each solution against its testbench");
    std::string v_in, v_out, v_backend = "iverilog", v_mock_script,
                v_fail_pattern = "FAIL|ERROR|MISMATCH", v_results;
    std::size_t v_workers = 4;
    long long v_timeout = 30;
    verify_cmd->add_option("-i,--input", v_in)->required();
    verify_cmd->add_option("-o,--output", v_out)->required();
    verify_cmd->add_option("--backend", v_backend)->check(CLI::IsMember({"iverilog", "mock"}));
    verify_cmd->add_option("--mock-script", v_mock_script);
    verify_cmd->add_option("--workers", v_workers)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--timeout-secs", v_timeout)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--fail-pattern", v_fail_pattern, "regex scanned per output line");
    verify_cmd->add_option("--results", v_results, "write per-sample results JSON here");

    // ---- evaluate ----
    auto* eval_cmd = app.add_subcommand("evaluate", "pass@k benchmark evaluation");
    std::string e_benchmark, e_backend = "iverilog", e_mock_script, e_generator = "stub",
                e_gen_url, e_outdir = "out";
    long long e_n = 10;
    std::string e_k = "1,5,10";
    double e_temperature = 0.2, e_top_p = 0.95;
    eval_cmd->add_option("--benchmark", e_benchmark, "problem corpus with testbenches")->required();
    eval_cmd->add_option("--n", e_n, "candidates per problem");
    eval_cmd->add_option("--k", e_k, "comma-separated k values");
    eval_cmd->add_option("--backend", e_backend)->check(CLI::IsMember({"iverilog", "mock"}));
    eval_cmd->add_option("--mock-script", e_mock_script);
    eval_cmd->add_option("--generator", e_generator)->check(CLI::IsMember({"stub", "http"}));
    eval_cmd->add_option("--gen-url", e_gen_url);
    eval_cmd->add_option("--temperature", e_temperature);
    eval_cmd->add_option("--top-p", e_top_p);
    eval_cmd->add_option("--output-dir", e_outdir);

    // ---- route ----
    auto* route_cmd = app.add_subcommand("route", "Difficulty-routed generation with token budgets");
    std::string r_in, r_mode = "adaptive", r_classifier = "heuristic", r_classifier_url,
                r_generator = "stub", r_gen_url, r_templates, r_outdir = "out",
                r_backend = "mock", r_mock_script;
    bool r_compare = false;
    route_cmd->add_option("-i,--input", r_in, "problem corpus")->required();
    route_cmd->add_option("--mode", r_mode)->check(CLI::IsMember({"adaptive", "easy", "medium", "hard"}));
    route_cmd->add_option("--classifier", r_classifier)->check(CLI::IsMember({"heuristic", "http"}));
    route_cmd->add_option("--classifier-url", r_classifier_url);
    route_cmd->add_option("--generator", r_generator)->check(CLI::IsMember({"stub", "http"}));
    route_cmd->add_option("--gen-url", r_gen_url);
    route_cmd->add_option("--templates-dir", r_templates, "override prompt templates");
    route_cmd->add_option("--output-dir", r_outdir);
    route_cmd->add_flag("--compare", r_compare, "run all modes and emit the efficiency table");
    route_cmd->add_option("--backend", r_backend)->check(CLI::IsMember({"iverilog", "mock"}));
    route_cmd->add_option("--mock-script", r_mock_script);

    // ---- pipeline ----
    auto* pipeline_cmd = app.add_subcommand("pipeline", "Run ingest->compile->dedup->quality->verify");
    std::string p_config, p_from_stage = "ingest";
    std::string p_input, p_outdir, p_combine, p_judge, p_backend, p_mock_script, p_fail_pattern;
    double p_threshold = -1.0;
    long long p_workers = -1, p_timeout = -1;
    pipeline_cmd->add_option("--config", p_config, "pipeline config file (JSON)");
    pipeline_cmd->add_option("--from-stage", p_from_stage)
        ->check(CLI::IsMember({"ingest", "compile", "dedup", "quality", "verify"}));
    pipeline_cmd->add_option("--input", p_input, "override paths.input");
    pipeline_cmd->add_option("--output-dir", p_outdir, "override paths.output_dir");
    pipeline_cmd->add_option("--sim-threshold", p_threshold, "override dedup.threshold");
    pipeline_cmd->add_option("--sim-combine", p_combine)->check(CLI::IsMember({"or", "and"}));
    pipeline_cmd->add_option("--judge", p_judge)->check(CLI::IsMember({"stub", "http"}));
    pipeline_cmd->add_option("--backend", p_backend)->check(CLI::IsMember({"iverilog", "mock"}));
    pipeline_cmd->add_option("--mock-script", p_mock_script);
    pipeline_cmd->add_option("--workers", p_workers);
    pipeline_cmd->add_option("--timeout-secs", p_timeout);
    pipeline_cmd->add_option("--fail-pattern", p_fail_pattern);

    // ---- report ----
    auto* report_cmd = app.add_subcommand("report", "Summarize artifacts from an output directory");
    std::string rep_dir = "out";
    report_cmd->add_option("-d,--dir", rep_dir, "pipeline output directory");

    CLI11_PARSE(app, argc, argv);

    if (*ingest) {
        Corpus corpus = load_corpus(ingest_in);
        save_corpus(corpus, ingest_out);
        print_stage_log(corpus);
        std::cout << "wrote " << corpus.size() << " sample(s) to " << ingest_out << "\n";
        return 0;
    }

    if (*compile) {
        Corpus corpus = load_corpus(cc_in);
        PipelineConfig::Verify vcfg;
        vcfg.backend = cc_backend;
        vcfg.mock_script = cc_mock_script;
        auto backend = make_backend(vcfg);
        CompileCheckResult result = compile_check(corpus, *backend, cc_workers);
        if (result.warning) std::cerr << "warning: " << *result.warning << "\n";
        save_corpus(result.corpus, cc_out);
        print_stage_log(result.corpus);
        return 0;
    }

    if (*dedup_cmd) {
        Corpus corpus = load_corpus(dd_in);
        TrigramHashEmbedder embedder;
        Corpus out = corpus.empty()
                         ? record_stage(corpus, "dedup", corpus)
                         : deduplicate(corpus, embedder, dd_threshold,
                                       sim_combine_from_string(dd_combine));
        save_corpus(out, dd_out);
        print_stage_log(out);
        return 0;
    }

    if (*quality_cmd) {
        Corpus corpus = load_corpus(q_in);
        PipelineConfig::Quality qcfg;
        qcfg.judge = q_judge;
        qcfg.judge_url = q_judge_url;
        auto judge = make_judge(qcfg);
        LintRuleSet rules = q_rules.empty() ? LintRuleSet::defaults() : LintRuleSet::from_file(q_rules);
        QualityFilterResult result = quality_filter(corpus, *judge, rules);
        save_corpus(result.corpus, q_out);
        print_stage_log(result.corpus);
        if (result.undetermined > 0)
            std::cout << "undetermined (judge unavailable, retained): " << result.undetermined << "\n";
        if (!result.corpus.empty()) {
            CompressionReport cr = compression_ratio(result.corpus, FieldSelector::solution_only());
            std::cout << "cr_report: " << cr.to_json().dump() << "\n";
            if (!q_cr_out.empty()) write_artifact(q_cr_out, cr.to_json());
        }
        return 0;
    }

    if (*verify_cmd) {
        Corpus corpus = load_corpus(v_in);
        PipelineConfig::Verify vcfg;
        vcfg.backend = v_backend;
        vcfg.mock_script = v_mock_script;
        auto backend = make_backend(vcfg);
        VerifyOptions options;
        options.fail_pattern = v_fail_pattern;
        VerifyCorpusResult result = verify_corpus(corpus, *backend, v_workers,
                                                  std::chrono::seconds(v_timeout), options);
        if (result.summary.warning) std::cerr << "warning: " << *result.summary.warning << "\n";
        save_corpus(result.corpus, v_out);
        print_stage_log(result.corpus);
        std::cout << "summary: " << result.summary.to_json().dump() << "\n";
        if (!v_results.empty()) {
            json rows = json::array();
            for (const auto& r : result.results) rows.push_back(r.to_json());
            write_artifact(v_results, rows);
        }
        return 0;
    }

    if (*eval_cmd) {
        Corpus problems = load_corpus(e_benchmark);
        PipelineConfig::Verify vcfg;
        vcfg.backend = e_backend;
        vcfg.mock_script = e_mock_script;
        auto backend = make_backend(vcfg);
        auto generator = make_generator(e_generator, problems, e_gen_url);

        std::vector<long long> k_list;
        for (const auto& part : split(e_k, ','))
            if (!part.empty()) k_list.push_back(std::stoll(part));

        EvaluateOptions options;
        options.sampling.temperature = e_temperature;
        options.sampling.top_p = e_top_p;
        BenchmarkRun run = evaluate_benchmark(problems, *generator, *backend, e_n, k_list, options);

        for (const auto& [k, v] : run.report.pass_at)
            std::cout << "pass@" << k << " = " << v << "\n";
        if (!run.tokens.per_problem.empty())
            std::cout << "mean tokens per candidate: " << run.tokens.mean() << "\n";
        if (run.generator_failures > 0)
            std::cout << "generator failures (counted incorrect): " << run.generator_failures << "\n";

        json artifact = run.report.to_json();
        artifact["token_usage"] = run.tokens.per_problem;
        artifact["generator_failures"] = run.generator_failures;
        write_artifact(std::filesystem::path(e_outdir) / "passk.json", artifact);
        std::cout << external_reference_note() << "\n";
        return 0;
    }

    if (*route_cmd) {
        Corpus problems = load_corpus(r_in);
        PipelineConfig::Adaptive acfg;
        acfg.classifier = r_classifier;
        acfg.classifier_url = r_classifier_url;
        auto classifier = make_classifier(acfg);
        auto generator = make_generator(r_generator, problems, r_gen_url);
        PromptTemplates templates = r_templates.empty() ? PromptTemplates::defaults()
                                                        : PromptTemplates::from_directory(r_templates);

        if (r_compare) {
            PipelineConfig::Verify vcfg;
            vcfg.backend = r_backend;
            vcfg.mock_script = r_mock_script;
            auto backend = make_backend(vcfg);
            CompareOptions options;
            options.templates = templates;
            ModeComparison comparison = compare_modes(problems, *classifier, *generator, *backend, options);
            std::cout << comparison.format();
            write_artifact(std::filesystem::path(r_outdir) / "efficiency.json",
                           comparison.efficiency.to_json());
            std::cout << external_reference_note() << "\n";
            return 0;
        }

        json rows = json::array();
        for (const Sample& problem : problems.samples) {
            DispatchResult result;
            if (r_mode == "adaptive") {
                result = dispatch(problem, *classifier, *generator, templates);
            } else {
                result = dispatch_with_plan(problem, plan_for(difficulty_from_string(r_mode)),
                                            *generator, templates);
            }
            json row;
            row["id"] = problem.id;
            row["difficulty"] = to_string(result.plan.difficulty);
            row["prompt_mode"] = to_string(result.plan.prompt_mode);
            row["max_new_tokens"] = result.plan.max_new_tokens;
            row["tokens_used"] = result.tokens_used;
            rows.push_back(row);
            std::cout << problem.id << ": " << to_string(result.plan.difficulty) << " ("
                      << to_string(result.plan.prompt_mode) << ", budget "
                      << result.plan.max_new_tokens << ", used " << result.tokens_used << ")\n";
        }
        write_artifact(std::filesystem::path(r_outdir) / "route.json", rows);
        return 0;
    }

    if (*pipeline_cmd) {
        PipelineConfig config =
            p_config.empty() ? PipelineConfig() : PipelineConfig::from_file(p_config);
        // Flags override config; config overrides defaults.
        if (!p_input.empty()) config.paths.input = p_input;
        if (!p_outdir.empty()) config.paths.output_dir = p_outdir;
        if (p_threshold >= 0.0) config.dedup.threshold = p_threshold;
        if (!p_combine.empty()) config.dedup.combine = sim_combine_from_string(p_combine);
        if (!p_judge.empty()) config.quality.judge = p_judge;
        if (!p_backend.empty()) config.verify.backend = p_backend;
        if (!p_mock_script.empty()) config.verify.mock_script = p_mock_script;
        if (p_workers > 0) config.verify.workers = static_cast<std::size_t>(p_workers);
        if (p_timeout > 0) config.verify.timeout_secs = p_timeout;
        if (!p_fail_pattern.empty()) config.verify.fail_pattern = p_fail_pattern;
        if (config.paths.input.empty())
            throw config_error("pipeline requires an input corpus (--input or config paths.input)");
        return run_pipeline(config, std::cerr, p_from_stage);
    }

    if (*report_cmd) {
        std::cout << veriforge::report(rep_dir);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const veriforge::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
