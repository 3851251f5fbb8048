#include "tmboost/interpret.hpp"

#include <sstream>

#include "tmboost/errors.hpp"

namespace tmboost {

std::vector<ClauseDescription> export_clauses(const TmModel& model, const Vocabulary& vocab,
                                              std::size_t min_includes) {
    if (vocab.size() != model.vocab_size())
        throw VocabMismatch("vocabulary size " + std::to_string(vocab.size()) +
                            " vs model m=" + std::to_string(model.vocab_size()));

    std::vector<ClauseDescription> out;
    const auto& cfg = model.config();
    for (int j = 0; j < cfg.classes; ++j) {
        for (int c = 0; c < cfg.clauses_per_class; ++c) {
            const std::size_t n = model.include_count(j, c);
            if (n < min_includes) continue;
            ClauseDescription d;
            d.class_index = j;
            d.clause_index = c;
            d.polarity = TmModel::positive_polarity(c) ? '+' : '-';
            d.include_count = n;
            const BitVec& orig = model.included_original(j, c);
            const BitVec& neg = model.included_negated(j, c);
            for (std::size_t t = 0; t < vocab.size(); ++t)
                if (orig.test(t)) d.positive_literals.push_back(vocab.word(t));
            for (std::size_t t = 0; t < vocab.size(); ++t)
                if (neg.test(t)) d.negated_literals.push_back(vocab.word(t));
            out.push_back(std::move(d));
        }
    }
    return out;
}

std::string format_clause(const ClauseDescription& d) {
    std::ostringstream out;
    out << "class=" << d.class_index << " i=" << d.clause_index << " pol=" << d.polarity << " :";
    bool first = true;
    for (const auto& w : d.positive_literals) {
        out << (first ? " " : " & ") << w;
        first = false;
    }
    for (const auto& w : d.negated_literals) {
        out << (first ? " " : " & ") << "¬" << w;
        first = false;
    }
    return out.str();
}

Coverage clause_coverage(const TmModel& model, std::span<const Sample> samples, int cls,
                         int clause) {
    const auto& cfg = model.config();
    if (cls < 0 || cls >= cfg.classes || clause < 0 || clause >= cfg.clauses_per_class)
        throw IndexOutOfRange("clause (" + std::to_string(cls) + ", " + std::to_string(clause) +
                              ") out of range");

    Coverage cov;
    cov.fired_per_label.assign(cfg.classes, 0);
    cov.total_per_label.assign(cfg.classes, 0);
    std::size_t fired = 0;
    for (const auto& sample : samples) {
        if (sample.label < 0 || sample.label >= cfg.classes)
            throw LabelOutOfRange("label " + std::to_string(sample.label) + " out of range");
        ++cov.total_per_label[sample.label];
        if (model.clause_output(cls, clause, sample.x, Mode::Inference) == 1) {
            ++fired;
            ++cov.fired_per_label[sample.label];
        }
    }
    cov.overall = samples.empty() ? 0.0 : static_cast<double>(fired) / samples.size();
    return cov;
}

} // namespace tmboost
