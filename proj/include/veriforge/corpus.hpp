#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "veriforge/errors.hpp"

namespace veriforge {

using json = nlohmann::ordered_json;

// One corpus entry: a task statement, its Verilog solution, and the optional
// companion fields (detailed description, reasoning path, testbench, domain
// label, quality score, origin tag). Unknown keys survive a load/save cycle.
struct Sample {
    std::string id;
    std::string problem;
    std::string solution;
    std::optional<std::string> description;
    std::optional<std::string> reasoning_path;
    std::optional<std::string> testbench;
    std::optional<std::string> domain;
    std::optional<double> quality_score;
    std::optional<std::string> provenance;
    json extra = json::object();

    bool operator==(const Sample& other) const = default;
};

struct StageRecord {
    std::string stage;
    std::size_t input = 0;
    std::size_t output = 0;

    double reduction() const {
        return input == 0 ? 0.0 : 1.0 - static_cast<double>(output) / static_cast<double>(input);
    }

    bool operator==(const StageRecord&) const = default;
};

struct Corpus {
    std::vector<Sample> samples;
    std::vector<StageRecord> stage_log;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

// 1 - final/initial over the whole stage log.
inline double cumulative_reduction(const Corpus& corpus) {
    if (corpus.stage_log.empty() || corpus.stage_log.front().input == 0) return 0.0;
    return 1.0 - static_cast<double>(corpus.stage_log.back().output) /
                     static_cast<double>(corpus.stage_log.front().input);
}

// Placeholder taxonomy for the domain label. The label set is user-configurable;
// nothing in the toolkit hardcodes these names.
inline const std::vector<std::string>& default_domain_taxonomy() {
    static const std::vector<std::string> taxonomy = {
        "arithmetic_unit",     "fsm_control",      "fifo_buffer",
        "counter_timer",       "uart_serial",      "spi_i2c",
        "memory_controller",   "bus_interface",    "interrupt_controller",
        "dsp_filter",          "encoder_decoder",  "crypto_unit",
        "video_display",       "error_detection",  "clock_management",
    };
    return taxonomy;
}

namespace detail {

inline std::optional<std::string> opt_string_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a string or null");
    return it->get<std::string>();
}

} // namespace detail

inline json sample_to_json(const Sample& s) {
    json j = json::object();
    j["id"] = s.id;
    j["problem"] = s.problem;
    // Optional fields serialize as explicit nulls so records stay byte-comparable.
    j["description"] = s.description ? json(*s.description) : json(nullptr);
    j["reasoning_path"] = s.reasoning_path ? json(*s.reasoning_path) : json(nullptr);
    j["solution"] = s.solution;
    j["testbench"] = s.testbench ? json(*s.testbench) : json(nullptr);
    j["domain"] = s.domain ? json(*s.domain) : json(nullptr);
    j["quality_score"] = s.quality_score ? json(*s.quality_score) : json(nullptr);
    j["provenance"] = s.provenance ? json(*s.provenance) : json(nullptr);
    for (const auto& [key, value] : s.extra.items()) j[key] = value;
    return j;
}

inline Sample sample_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("record is not an object");
    Sample s;
    for (const char* key : {"id", "problem", "solution"}) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_string())
            throw std::invalid_argument(std::string("missing or non-string required key '") + key + "'");
    }
    s.id = j.at("id").get<std::string>();
    if (s.id.empty()) throw std::invalid_argument("id must be non-empty");
    s.problem = j.at("problem").get<std::string>();
    s.solution = j.at("solution").get<std::string>();
    s.description = detail::opt_string_field(j, "description");
    s.reasoning_path = detail::opt_string_field(j, "reasoning_path");
    s.testbench = detail::opt_string_field(j, "testbench");
    s.domain = detail::opt_string_field(j, "domain");
    s.provenance = detail::opt_string_field(j, "provenance");
    if (auto it = j.find("quality_score"); it != j.end() && !it->is_null()) {
        if (!it->is_number()) throw std::invalid_argument("quality_score must be a number or null");
        double v = it->get<double>();
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("quality_score out of [0,1]");
        s.quality_score = v;
    }
    static const std::unordered_set<std::string> known = {
        "id", "problem", "description", "reasoning_path", "solution",
        "testbench", "domain", "quality_score", "provenance"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) s.extra[key] = value;
    }
    return s;
}

// Reads a line-delimited corpus file: one record per line, UTF-8.
// The stage log starts with ("ingest", N, N).
inline Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open corpus file: " + path.string());
    Corpus corpus;
    std::unordered_map<std::string, std::size_t> seen; // id -> first line
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(lineno, std::string("invalid record: ") + e.what());
        }
        Sample s;
        try {
            s = sample_from_json(j);
        } catch (const std::exception& e) {
            throw parse_error(lineno, e.what());
        }
        auto [it, inserted] = seen.emplace(s.id, lineno);
        if (!inserted) {
            throw integrity_error("duplicate id '" + s.id + "' on lines " +
                                  std::to_string(it->second) + " and " + std::to_string(lineno));
        }
        corpus.samples.push_back(std::move(s));
    }
    std::size_t n = corpus.samples.size();
    corpus.stage_log.push_back({"ingest", n, n});
    return corpus;
}

// Writes one record per line in canonical key order. load_corpus(save_corpus(c))
// round-trips every field.
inline void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    for (const Sample& s : corpus.samples) {
        out << sample_to_json(s).dump() << '\n';
        if (!out) throw io_error("write failed: " + path.string());
    }
    out.flush();
    if (!out) throw io_error("write failed: " + path.string());
}

// Appends (stage, |input|, |output|) to the log carried by the output corpus.
// The output sample set must be a subset of the input's.
inline Corpus record_stage(const Corpus& input, const std::string& stage, const Corpus& output) {
    std::unordered_set<std::string> input_ids;
    input_ids.reserve(input.samples.size());
    for (const Sample& s : input.samples) input_ids.insert(s.id);
    for (const Sample& s : output.samples) {
        if (!input_ids.count(s.id))
            throw integrity_error("stage '" + stage + "' output contains sample '" + s.id +
                                  "' absent from its input");
    }
    Corpus result;
    result.samples = output.samples;
    result.stage_log = input.stage_log;
    result.stage_log.push_back({stage, input.samples.size(), output.samples.size()});
    return result;
}

} // namespace veriforge
