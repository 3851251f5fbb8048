#pragma once

#include <span>
#include <string>
#include <vector>

#include "tmboost/corpus.hpp"
#include "tmboost/tm.hpp"

namespace tmboost {

/// A learned clause rendered as words: conjunction of positive and negated
/// literals, both in ascending vocabulary order.
struct ClauseDescription {
    int class_index = 0;
    int clause_index = 0;
    char polarity = '+';
    std::vector<std::string> positive_literals;
    std::vector<std::string> negated_literals;
    std::size_t include_count = 0;
};

std::vector<ClauseDescription> export_clauses(const TmModel& model, const Vocabulary& vocab,
                                              std::size_t min_includes);

/// `class=<j> i=<i> pol=<+|-> : <lit1> & <lit2> & ...`
std::string format_clause(const ClauseDescription& d);

struct Coverage {
    double overall = 0.0;
    std::vector<std::size_t> fired_per_label;
    std::vector<std::size_t> total_per_label;
};

/// Fraction of documents the clause fires on in inference mode, overall and
/// per label.
Coverage clause_coverage(const TmModel& model, std::span<const Sample> samples, int cls,
                         int clause);

} // namespace tmboost
