#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "veriforge/corpus.hpp"
#include "veriforge/subprocess.hpp"
#include "veriforge/util.hpp"

namespace veriforge {

enum class VerifyStatus { Pass, CompileFail, SimFail, Timeout, ToolMissing };

inline const char* to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Pass: return "pass";
        case VerifyStatus::CompileFail: return "compile_fail";
        case VerifyStatus::SimFail: return "sim_fail";
        case VerifyStatus::Timeout: return "timeout";
        case VerifyStatus::ToolMissing: return "tool_missing";
    }
    return "unknown";
}

struct VerificationResult {
    std::string sample_id;
    VerifyStatus status = VerifyStatus::SimFail;
    std::string detail;       // captured tool output, truncated
    std::int64_t wall_ms = 0;

    json to_json() const {
        json j;
        j["sample_id"] = sample_id;
        j["status"] = to_string(status);
        j["detail"] = detail;
        j["wall_ms"] = wall_ms;
        return j;
    }
};

struct VerificationSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t compile_fail = 0;
    std::size_t sim_fail = 0;
    std::size_t timeout = 0;
    std::size_t tool_missing = 0;
    double rejection_rate = 0.0;
    std::optional<std::string> warning;

    json to_json() const {
        json j;
        j["total"] = total;
        j["passed"] = passed;
        j["compile_fail"] = compile_fail;
        j["sim_fail"] = sim_fail;
        j["timeout"] = timeout;
        j["tool_missing"] = tool_missing;
        j["rejection_rate"] = rejection_rate;
        if (warning) j["warning"] = *warning;
        return j;
    }
};

struct SourceFile {
    std::string name;
    std::string content;
};

struct CompileInput {
    std::string unit_name; // usually the sample id
    std::vector<SourceFile> files;
};

struct CompileOutcome {
    enum class Status { Ok, Fail, ToolMissing };
    Status status = Status::Fail;
    std::string output;
    std::string unit_name;
    std::filesystem::path workdir; // empty for backends without on-disk artifacts
    std::int64_t wall_ms = 0;
};

struct SimOutcome {
    int exit_code = -1;
    bool timed_out = false;
    bool tool_missing = false;
    std::string output;
    std::int64_t wall_ms = 0;
};

// Compile/simulate service. Implementations must be safe for concurrent use
// across distinct samples and must return from simulate within the timeout
// plus a short kill window.
class SimulatorBackend {
public:
    virtual ~SimulatorBackend() = default;
    virtual CompileOutcome compile(const CompileInput& input) = 0;
    virtual SimOutcome simulate(const CompileOutcome& unit, std::chrono::milliseconds timeout) = 0;
    virtual void cleanup(const CompileOutcome& unit, bool keep_artifacts) { (void)unit; (void)keep_artifacts; }
};

// ---------------------------------------------------------------------------
// Icarus Verilog backend: iverilog for compilation, vvp for simulation.
// Executables resolve from VERIFORGE_IVERILOG / VERIFORGE_VVP or the PATH.
// ---------------------------------------------------------------------------
class IcarusBackend final : public SimulatorBackend {
public:
    IcarusBackend() {
        if (const char* p = std::getenv("VERIFORGE_IVERILOG")) iverilog_ = p;
        if (const char* p = std::getenv("VERIFORGE_VVP")) vvp_ = p;
    }
    IcarusBackend(std::string iverilog, std::string vvp)
        : iverilog_(std::move(iverilog)), vvp_(std::move(vvp)) {}

    CompileOutcome compile(const CompileInput& input) override {
        CompileOutcome outcome;
        outcome.unit_name = input.unit_name;
        std::error_code ec;
        auto root = std::filesystem::temp_directory_path(ec) / "veriforge";
        std::filesystem::create_directories(root, ec);
        std::string tmpl = (root / "unit-XXXXXX").string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        if (!mkdtemp(buf.data())) {
            outcome.status = CompileOutcome::Status::Fail;
            outcome.output = "cannot create build directory under " + root.string();
            return outcome;
        }
        outcome.workdir = std::filesystem::path(buf.data());

        std::vector<std::string> argv = {iverilog_, "-o", "sim.vvp"};
        for (const auto& f : input.files) {
            std::ofstream out(outcome.workdir / f.name, std::ios::binary);
            out << f.content;
            argv.push_back(f.name);
        }
        ExecResult exec = run_process(argv, std::chrono::seconds(60), outcome.workdir);
        outcome.output = exec.output;
        outcome.wall_ms = exec.wall_ms;
        if (exec.tool_missing()) {
            outcome.status = CompileOutcome::Status::ToolMissing;
            outcome.output = iverilog_ + ": executable not found";
        } else if (exec.spawn_failed || exec.exit_code != 0 || exec.timed_out) {
            outcome.status = CompileOutcome::Status::Fail;
        } else {
            outcome.status = CompileOutcome::Status::Ok;
        }
        return outcome;
    }

    SimOutcome simulate(const CompileOutcome& unit, std::chrono::milliseconds timeout) override {
        SimOutcome sim;
        ExecResult exec = run_process({vvp_, "sim.vvp"}, timeout, unit.workdir);
        sim.exit_code = exec.exit_code;
        sim.timed_out = exec.timed_out;
        sim.tool_missing = exec.tool_missing();
        sim.output = sim.tool_missing ? vvp_ + ": executable not found" : exec.output;
        sim.wall_ms = exec.wall_ms;
        return sim;
    }

    void cleanup(const CompileOutcome& unit, bool keep_artifacts) override {
        if (unit.workdir.empty() || keep_artifacts) return;
        std::error_code ec;
        std::filesystem::remove_all(unit.workdir, ec);
    }

    const std::string& iverilog_path() const { return iverilog_; }

private:
    std::string iverilog_ = "iverilog";
    std::string vvp_ = "vvp";
};

// ---------------------------------------------------------------------------
// Mock backend: scripted outcomes keyed by unit name, so the whole suite runs
// without any EDA tool installed. Deterministic, including reported wall time.
// ---------------------------------------------------------------------------
struct MockOutcome {
    bool compile_ok = true;
    std::string compile_output;
    int sim_exit = 0;
    std::string sim_output = "ALL TESTS PASSED";
    bool sim_timeout = false;
    bool tool_missing = false;
    std::int64_t wall_ms = 1;

    static MockOutcome pass() { return {}; }
    static MockOutcome compile_fail(std::string msg = "syntax error") {
        MockOutcome m;
        m.compile_ok = false;
        m.compile_output = std::move(msg);
        return m;
    }
    static MockOutcome sim_fail(std::string msg = "MISMATCH at vector 3") {
        MockOutcome m;
        m.sim_output = std::move(msg);
        return m;
    }
    static MockOutcome timeout() {
        MockOutcome m;
        m.sim_timeout = true;
        return m;
    }
    static MockOutcome missing() {
        MockOutcome m;
        m.tool_missing = true;
        return m;
    }

    static MockOutcome from_name(const std::string& name) {
        if (name == "pass") return pass();
        if (name == "compile_fail") return compile_fail();
        if (name == "sim_fail") return sim_fail();
        if (name == "timeout") return timeout();
        if (name == "tool_missing") return missing();
        throw std::invalid_argument("unknown mock outcome '" + name + "'");
    }
};

class MockBackend final : public SimulatorBackend {
public:
    MockBackend() = default;
    explicit MockBackend(MockOutcome default_outcome) : default_(std::move(default_outcome)) {}

    void script(const std::string& unit_name, MockOutcome outcome) {
        scripted_[unit_name] = std::move(outcome);
    }

    // {"default": "pass", "outcomes": {"id7": "sim_fail", ...}}
    static MockBackend from_json(const json& j) {
        MockBackend backend;
        if (j.contains("default")) backend.default_ = MockOutcome::from_name(j.at("default"));
        if (j.contains("outcomes")) {
            for (const auto& [id, name] : j.at("outcomes").items()) {
                backend.script(id, MockOutcome::from_name(name));
            }
        }
        return backend;
    }

    static MockBackend from_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open mock script: " + path.string());
        return from_json(json::parse(in));
    }

    CompileOutcome compile(const CompileInput& input) override {
        const MockOutcome& m = lookup(input.unit_name);
        CompileOutcome outcome;
        outcome.unit_name = input.unit_name;
        if (m.tool_missing) {
            outcome.status = CompileOutcome::Status::ToolMissing;
            outcome.output = "mock: tool missing";
        } else if (!m.compile_ok) {
            outcome.status = CompileOutcome::Status::Fail;
            outcome.output = m.compile_output;
        } else {
            outcome.status = CompileOutcome::Status::Ok;
        }
        return outcome;
    }

    SimOutcome simulate(const CompileOutcome& unit, std::chrono::milliseconds timeout) override {
        const MockOutcome& m = lookup(unit.unit_name);
        SimOutcome sim;
        if (m.sim_timeout) {
            sim.timed_out = true;
            sim.exit_code = 128 + SIGKILL;
            sim.wall_ms = timeout.count();
        } else {
            sim.exit_code = m.sim_exit;
            sim.output = m.sim_output;
            sim.wall_ms = m.wall_ms;
        }
        return sim;
    }

private:
    const MockOutcome& lookup(const std::string& unit_name) const {
        auto it = scripted_.find(unit_name);
        return it == scripted_.end() ? default_ : it->second;
    }

    MockOutcome default_ = MockOutcome::pass();
    std::map<std::string, MockOutcome> scripted_;
};

// ---------------------------------------------------------------------------
// Verification orchestration
// ---------------------------------------------------------------------------

struct VerifyOptions {
    // Testbenches conventionally print errors while exiting 0, so the pass
    // criterion scans output lines as well as the exit status.
    std::string fail_pattern = "FAIL|ERROR|MISMATCH";
    std::size_t detail_limit = 8192;
};

namespace detail {

inline bool output_matches_failure(const std::string& output, const std::string& pattern) {
    std::regex re(pattern, std::regex::icase);
    std::size_t start = 0;
    while (start <= output.size()) {
        std::size_t end = output.find('\n', start);
        if (end == std::string::npos) end = output.size();
        if (std::regex_search(output.begin() + start, output.begin() + end, re)) return true;
        start = end + 1;
    }
    return false;
}

inline std::string truncated_detail(const std::string& text, std::size_t limit) {
    if (text.size() <= limit) return text;
    return text.substr(0, limit) + "\n[truncated]";
}

} // namespace detail

// Compiles solution plus testbench, simulates, and classifies the outcome.
// Pass requires exit status 0 and no output line matching the failure pattern.
inline VerificationResult verify_sample(const Sample& sample,
                                        SimulatorBackend& backend,
                                        std::chrono::milliseconds timeout = std::chrono::seconds(30),
                                        const VerifyOptions& options = {}) {
    if (sample.solution.empty())
        throw std::invalid_argument("verify_sample: sample '" + sample.id + "' has no solution");
    if (!sample.testbench || sample.testbench->empty())
        throw std::invalid_argument("verify_sample: sample '" + sample.id + "' has no testbench");

    VerificationResult result;
    result.sample_id = sample.id;

    CompileInput input{sample.id, {{"dut.v", sample.solution}, {"tb.v", *sample.testbench}}};
    CompileOutcome compiled = backend.compile(input);
    result.wall_ms = compiled.wall_ms;

    if (compiled.status == CompileOutcome::Status::ToolMissing) {
        result.status = VerifyStatus::ToolMissing;
        result.detail = detail::truncated_detail(compiled.output, options.detail_limit);
        backend.cleanup(compiled, false);
        return result;
    }
    if (compiled.status == CompileOutcome::Status::Fail) {
        result.status = VerifyStatus::CompileFail;
        result.detail = detail::truncated_detail(compiled.output, options.detail_limit);
        backend.cleanup(compiled, true); // keep build dir for debugging
        return result;
    }

    SimOutcome sim = backend.simulate(compiled, timeout);
    result.wall_ms += sim.wall_ms;
    result.detail = detail::truncated_detail(sim.output, options.detail_limit);

    if (sim.tool_missing) {
        result.status = VerifyStatus::ToolMissing;
        backend.cleanup(compiled, false);
        return result;
    }
    if (sim.timed_out) {
        result.status = VerifyStatus::Timeout;
        backend.cleanup(compiled, true);
        return result;
    }
    bool failed = sim.exit_code != 0 ||
                  detail::output_matches_failure(sim.output, options.fail_pattern);
    result.status = failed ? VerifyStatus::SimFail : VerifyStatus::Pass;
    backend.cleanup(compiled, failed);
    return result;
}

struct VerifyCorpusResult {
    Corpus corpus;
    VerificationSummary summary;
    std::vector<VerificationResult> results; // one per input sample, input order
};

// Runs verification over the corpus with a bounded worker pool. Results merge
// in input order, so the retained set is independent of scheduling.
inline VerifyCorpusResult verify_corpus(const Corpus& corpus,
                                        SimulatorBackend& backend,
                                        std::size_t workers = 4,
                                        std::chrono::milliseconds timeout = std::chrono::seconds(30),
                                        const VerifyOptions& options = {}) {
    if (workers < 1) throw std::invalid_argument("verify_corpus: workers must be >= 1");

    const std::size_t n = corpus.samples.size();
    VerifyCorpusResult out;
    out.results.resize(n);

    parallel_for(n, workers, [&](std::size_t i) {
        const Sample& s = corpus.samples[i];
        if (s.solution.empty() || !s.testbench || s.testbench->empty()) {
            out.results[i] = {s.id, VerifyStatus::SimFail,
                              "missing solution or testbench; cannot verify", 0};
            return;
        }
        out.results[i] = verify_sample(s, backend, timeout, options);
    });

    Corpus retained;
    for (std::size_t i = 0; i < n; ++i) {
        switch (out.results[i].status) {
            case VerifyStatus::Pass:
                ++out.summary.passed;
                retained.samples.push_back(corpus.samples[i]);
                break;
            case VerifyStatus::CompileFail: ++out.summary.compile_fail; break;
            case VerifyStatus::SimFail: ++out.summary.sim_fail; break;
            case VerifyStatus::Timeout: ++out.summary.timeout; break;
            case VerifyStatus::ToolMissing: ++out.summary.tool_missing; break;
        }
    }
    out.summary.total = n;
    out.summary.rejection_rate =
        n == 0 ? 0.0 : 1.0 - static_cast<double>(out.summary.passed) / static_cast<double>(n);
    if (n > 0 && out.summary.tool_missing == n) {
        out.summary.warning = "simulator executable not found; no sample could be verified";
    }
    out.corpus = record_stage(corpus, "verify", retained);
    return out;
}

struct CompileCheckResult {
    Corpus corpus;
    std::vector<VerificationResult> results;
    std::optional<std::string> warning;
};

// Retains samples whose solution compiles on its own. Build directories are
// always removed here; this is a bulk filter, not a debugging step.
inline CompileCheckResult compile_check(const Corpus& corpus,
                                        SimulatorBackend& backend,
                                        std::size_t workers = 1) {
    const std::size_t n = corpus.samples.size();
    CompileCheckResult out;
    out.results.resize(n);

    parallel_for(n, std::max<std::size_t>(1, workers), [&](std::size_t i) {
        const Sample& s = corpus.samples[i];
        VerificationResult r;
        r.sample_id = s.id;
        if (s.solution.empty()) {
            r.status = VerifyStatus::CompileFail;
            r.detail = "empty solution";
            out.results[i] = r;
            return;
        }
        CompileOutcome compiled = backend.compile({s.id, {{"dut.v", s.solution}}});
        r.wall_ms = compiled.wall_ms;
        r.detail = detail::truncated_detail(compiled.output, 8192);
        switch (compiled.status) {
            case CompileOutcome::Status::Ok: r.status = VerifyStatus::Pass; break;
            case CompileOutcome::Status::Fail: r.status = VerifyStatus::CompileFail; break;
            case CompileOutcome::Status::ToolMissing: r.status = VerifyStatus::ToolMissing; break;
        }
        backend.cleanup(compiled, false);
        out.results[i] = r;
    });

    Corpus retained;
    std::size_t missing = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (out.results[i].status == VerifyStatus::Pass) retained.samples.push_back(corpus.samples[i]);
        if (out.results[i].status == VerifyStatus::ToolMissing) ++missing;
    }
    if (n > 0 && missing == n) {
        out.warning = "simulator executable not found; no sample could be compile-checked";
    }
    out.corpus = record_stage(corpus, "compile", retained);
    return out;
}

} // namespace veriforge
