#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <zlib.h>

#include <json.hpp>

#include "veriforge/corpus.hpp"
#include "veriforge/lexer.hpp"

namespace veriforge {

// Which sample fields feed the concatenation handed to the compressor.
struct FieldSelector {
    bool problem = false;
    bool description = false;
    bool reasoning_path = false;
    bool solution = true;
    bool testbench = false;

    static FieldSelector solution_only() { return {}; }
    static FieldSelector all_text() { return {true, true, true, true, true}; }

    static FieldSelector from_names(const std::vector<std::string>& names) {
        FieldSelector sel{false, false, false, false, false};
        for (const auto& name : names) {
            if (name == "problem") sel.problem = true;
            else if (name == "description") sel.description = true;
            else if (name == "reasoning_path") sel.reasoning_path = true;
            else if (name == "solution") sel.solution = true;
            else if (name == "testbench") sel.testbench = true;
            else throw std::invalid_argument("unknown field '" + name + "' in field selector");
        }
        return sel;
    }
};

// Size of `data` in the gzip (DEFLATE) container at the given level. The
// container's modification-time field is zero, so byte counts are stable
// across runs.
inline std::uint64_t gzip_compressed_size(std::string_view data, int level = 6) {
    z_stream strm{};
    if (deflateInit2(&strm, level, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflateInit2 failed");
    std::uint64_t total = 0;
    unsigned char out[16384];
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    strm.avail_in = static_cast<uInt>(data.size());
    int ret = Z_OK;
    do {
        strm.next_out = out;
        strm.avail_out = sizeof(out);
        ret = deflate(&strm, Z_FINISH);
        if (ret == Z_STREAM_ERROR) {
            deflateEnd(&strm);
            throw std::runtime_error("deflate failed");
        }
        total += sizeof(out) - strm.avail_out;
    } while (ret != Z_STREAM_END);
    deflateEnd(&strm);
    return total;
}

// CR measures raw bytes over gzip bytes; CR-POS applies the same measure to
// the token-class sequence of the text (rendered one byte per token). The
// token-class reading of "POS" is this toolkit's interpretation and is
// labeled as such wherever the report is emitted.
struct CompressionReport {
    double cr = 0.0;
    double cr_pos = 0.0;
    std::uint64_t raw_bytes = 0;
    std::uint64_t compressed_bytes = 0;
    std::uint64_t pos_raw_bytes = 0;
    std::uint64_t pos_compressed_bytes = 0;
    int level = 6;

    json to_json() const {
        json j;
        j["cr"] = cr;
        j["cr_pos"] = cr_pos;
        j["raw_bytes"] = raw_bytes;
        j["compressed_bytes"] = compressed_bytes;
        j["pos_raw_bytes"] = pos_raw_bytes;
        j["pos_compressed_bytes"] = pos_compressed_bytes;
        j["gzip_level"] = level;
        j["cr_pos_interpretation"] = "compression ratio of the token-class sequence";
        return j;
    }
};

// Selected fields joined by single newlines within a sample, samples joined by
// a blank line. Absent optional fields contribute nothing.
inline std::string concatenate_fields(const Corpus& corpus, const FieldSelector& fields) {
    std::string text;
    bool first_sample = true;
    for (const Sample& s : corpus.samples) {
        std::string block;
        auto append = [&block](const std::string& piece) {
            if (piece.empty()) return;
            if (!block.empty()) block.push_back('\n');
            block += piece;
        };
        if (fields.problem) append(s.problem);
        if (fields.description && s.description) append(*s.description);
        if (fields.reasoning_path && s.reasoning_path) append(*s.reasoning_path);
        if (fields.solution) append(s.solution);
        if (fields.testbench && s.testbench) append(*s.testbench);
        if (block.empty()) continue;
        if (!first_sample) text += "\n\n";
        text += block;
        first_sample = false;
    }
    return text;
}

inline CompressionReport compression_ratio(const Corpus& corpus,
                                           const FieldSelector& fields = FieldSelector::solution_only(),
                                           int level = 6) {
    if (corpus.empty()) throw std::invalid_argument("compression_ratio: corpus is empty");
    std::string text = concatenate_fields(corpus, fields);
    if (text.empty()) throw std::invalid_argument("compression_ratio: selected fields are empty");

    CompressionReport report;
    report.level = level;
    report.raw_bytes = text.size();
    report.compressed_bytes = gzip_compressed_size(text, level);
    report.cr = static_cast<double>(report.raw_bytes) / static_cast<double>(report.compressed_bytes);

    std::string classes = token_class_string(tokenize_to_classes(text));
    if (!classes.empty()) {
        report.pos_raw_bytes = classes.size();
        report.pos_compressed_bytes = gzip_compressed_size(classes, level);
        report.cr_pos = static_cast<double>(report.pos_raw_bytes) /
                        static_cast<double>(report.pos_compressed_bytes);
    }
    return report;
}

} // namespace veriforge
