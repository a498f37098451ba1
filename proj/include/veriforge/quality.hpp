#pragma once

#include <string>
#include <vector>

#include "veriforge/corpus.hpp"
#include "veriforge/judge.hpp"
#include "veriforge/lint.hpp"
#include "veriforge/util.hpp"

namespace veriforge {

struct QualityFilterResult {
    Corpus corpus;
    std::size_t undetermined = 0;            // judge transport failures (fail-open, retained)
    std::vector<std::string> removed_ids;    // in input order
};

// Expert-rule quality gate: a sample survives when the deterministic lint
// passes and the judge concurs. A judge transport error keeps the sample and
// counts it as undetermined rather than emptying corpora when the endpoint is
// down. Judge calls run with a bounded number of in-flight requests.
inline QualityFilterResult quality_filter(const Corpus& corpus,
                                          JudgeClient& judge,
                                          const LintRuleSet& rules = LintRuleSet::defaults(),
                                          std::size_t judge_workers = 4) {
    const std::size_t n = corpus.samples.size();
    enum class Outcome { Keep, Remove, Undetermined };
    std::vector<Outcome> outcomes(n, Outcome::Keep);

    parallel_for(n, std::max<std::size_t>(1, judge_workers), [&](std::size_t i) {
        const Sample& s = corpus.samples[i];
        if (s.solution.empty()) {
            outcomes[i] = Outcome::Remove;
            return;
        }
        if (!style_lint(s, rules).passed) {
            outcomes[i] = Outcome::Remove;
            return;
        }
        try {
            outcomes[i] = judge.assess(s).passed ? Outcome::Keep : Outcome::Remove;
        } catch (const transport_error&) {
            outcomes[i] = Outcome::Undetermined;
        }
    });

    QualityFilterResult result;
    Corpus output;
    for (std::size_t i = 0; i < n; ++i) {
        switch (outcomes[i]) {
            case Outcome::Keep:
                output.samples.push_back(corpus.samples[i]);
                break;
            case Outcome::Undetermined:
                output.samples.push_back(corpus.samples[i]);
                ++result.undetermined;
                break;
            case Outcome::Remove:
                result.removed_ids.push_back(corpus.samples[i].id);
                break;
        }
    }
    result.corpus = record_stage(corpus, "quality", output);
    return result;
}

} // namespace veriforge
