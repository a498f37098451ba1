#pragma once

// Shared test fixtures: Verilog sources with known lint/simulation behaviour,
// deterministic corpus builders, and a temp-dir guard.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "veriforge/corpus.hpp"

namespace fixtures {

using veriforge::Corpus;
using veriforge::Sample;

inline Sample make_sample(std::string id, std::string problem, std::string solution) {
    Sample s;
    s.id = std::move(id);
    s.problem = std::move(problem);
    s.solution = std::move(solution);
    return s;
}

// ---------------------------------------------------------------------------
// Verilog sources
// ---------------------------------------------------------------------------

// Obeys every default lint rule.
inline const char* counter_good = R"(module counter(
    input clk,
    input rst,
    output reg [3:0] q
);
always @(posedge clk) begin
    if (rst)
        q <= 4'd0;
    else
        q <= q + 4'd1;
end
endmodule
)";

// R1: module name is not lower_snake_case (violation on line 1).
inline const char* bad_name_module = R"(module MyCounter(
    input clk,
    output reg [3:0] q
);
always @(posedge clk) q <= q + 4'd1;
endmodule
)";

// R2: delay on a continuous assignment (line 5).
inline const char* delay_assign_module = R"(module delay_assign(
    input a,
    output w
);
assign #3 w = a;
endmodule
)";

// Delays inside an initial block are exempt from R2.
inline const char* initial_delay_module = R"(module stim_gen;
reg clk;
initial begin
    clk = 0;
    #10 clk = 1;
end
endmodule
)";

// R3: blocking assignment inside a clocked always block (line 7).
inline const char* blocking_seq_module = R"(module bad_seq(
    input clk,
    input d,
    output reg q
);
always @(posedge clk) begin
    q = d;
end
endmodule
)";

// R4: port b declared (line 3) but never referenced.
inline const char* unused_port_module = R"(module dangler(
    input a,
    input b,
    output y
);
assign y = a;
endmodule
)";

// Reference 4-bit adder and exhaustive self-checking testbench.
inline const char* adder4_dut = R"(module adder4(
    input [3:0] a,
    input [3:0] b,
    output [4:0] sum
);
assign sum = a + b;
endmodule
)";

// One output bit inverted; every vector mismatches.
inline const char* adder4_mutant = R"(module adder4(
    input [3:0] a,
    input [3:0] b,
    output [4:0] sum
);
assign sum = (a + b) ^ 5'b00001;
endmodule
)";

inline const char* adder4_tb = R"(module adder4_tb;
reg [3:0] a, b;
wire [4:0] sum;
integer i, j;
integer mismatches;
adder4 dut(.a(a), .b(b), .sum(sum));
initial begin
    mismatches = 0;
    for (i = 0; i < 16; i = i + 1) begin
        for (j = 0; j < 16; j = j + 1) begin
            a = i[3:0];
            b = j[3:0];
            #1;
            if (sum !== i + j) begin
                $display("MISMATCH: %0d + %0d gave %0d", i, j, sum);
                mismatches = mismatches + 1;
            end
        end
    end
    if (mismatches == 0)
        $display("ALL 256 VECTORS OK");
    $finish;
end
endmodule
)";

// Free-running clock with no $finish: simulates forever until killed.
inline const char* hang_tb = R"(module hang_tb;
reg clk;
initial clk = 0;
always #1 clk = ~clk;
endmodule
)";

// ---------------------------------------------------------------------------
// Deterministic corpus builders
// ---------------------------------------------------------------------------

inline std::string random_words(std::uint32_t seed, int count) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> len(5, 9);
    std::uniform_int_distribution<int> letter(0, 25);
    std::string text;
    for (int w = 0; w < count; ++w) {
        if (w) text.push_back(' ');
        int l = len(rng);
        for (int i = 0; i < l; ++i) text.push_back(static_cast<char>('a' + letter(rng)));
    }
    return text;
}

// Lint-clean compilable module with per-seed module/port names and a
// distinguishing comment, so distinct seeds stay dissimilar under the
// trigram embedder while sharing only Verilog syntax.
inline std::string lint_clean_solution(std::uint32_t ident_seed, const std::string& suffix = "") {
    std::string m = random_words(ident_seed, 1);
    std::string a = random_words(ident_seed + 1, 1);
    std::string y = random_words(ident_seed + 2, 1);
    return "module u_" + m + "(\n    input " + a + ",\n    output " + y + "\n);\nassign " + y +
           " = " + a + " ^ 1'b0;\nendmodule\n// " + random_words(ident_seed + 3, 40) + suffix +
           "\n";
}

// `uniques` mutually dissimilar samples plus `clusters` groups of
// `cluster_size` near-duplicates (shared base text, tiny suffix edits).
inline Corpus planted_cluster_corpus(int uniques, int clusters, int cluster_size) {
    Corpus corpus;
    for (int u = 0; u < uniques; ++u) {
        Sample s = make_sample("unique-" + std::to_string(u),
                               random_words(5000 + u, 12),
                               random_words(9000 + u, 60));
        corpus.samples.push_back(std::move(s));
    }
    for (int c = 0; c < clusters; ++c) {
        std::string base_problem = random_words(1000 + c, 12);
        std::string base_solution = random_words(2000 + c, 60);
        for (int m = 0; m < cluster_size; ++m) {
            Sample s = make_sample("cluster-" + std::to_string(c) + "-" + std::to_string(m),
                                   base_problem + " rev " + std::to_string(m),
                                   base_solution + "\nrev " + std::to_string(m));
            corpus.samples.push_back(std::move(s));
        }
    }
    corpus.stage_log.push_back({"ingest", corpus.samples.size(), corpus.samples.size()});
    return corpus;
}

// Pipeline-grade variant of planted_cluster_corpus: every solution is a
// lint-clean Verilog module (shared skeleton plus a dominant comment block),
// and every sample carries a trivially terminating testbench.
inline Corpus pipeline_corpus(int uniques, int clusters, int cluster_size) {
    Corpus corpus;
    for (int u = 0; u < uniques; ++u) {
        Sample s = make_sample("unique-" + std::to_string(u),
                               random_words(5000 + u, 12),
                               lint_clean_solution(9000 + 10 * u));
        s.testbench = "module tb; initial $finish; endmodule";
        corpus.samples.push_back(std::move(s));
    }
    for (int c = 0; c < clusters; ++c) {
        std::string base_problem = random_words(1000 + c, 12);
        for (int m = 0; m < cluster_size; ++m) {
            Sample s = make_sample("cluster-" + std::to_string(c) + "-" + std::to_string(m),
                                   base_problem + " rev " + std::to_string(m),
                                   lint_clean_solution(20000 + 10 * c,
                                                       " rev " + std::to_string(m)));
            s.testbench = "module tb; initial $finish; endmodule";
            corpus.samples.push_back(std::move(s));
        }
    }
    corpus.stage_log.push_back({"ingest", corpus.samples.size(), corpus.samples.size()});
    return corpus;
}

// ---------------------------------------------------------------------------
// Filesystem helpers
// ---------------------------------------------------------------------------

class TempDir {
public:
    explicit TempDir(const std::string& tag = "veriforge-test") {
        std::string tmpl = (std::filesystem::temp_directory_path() / (tag + "-XXXXXX")).string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        if (!mkdtemp(buf.data())) throw std::runtime_error("mkdtemp failed");
        path_ = buf.data();
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace fixtures
