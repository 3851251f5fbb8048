#include "tmboost/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace tmboost {

bool EmbeddingTable::insert(std::string token, std::span<const double> values) {
    if (dim_ == 0) dim_ = values.size();
    if (values.size() != dim_)
        throw DimensionMismatch("vector for '" + token + "' has " +
                                std::to_string(values.size()) + " components, expected " +
                                std::to_string(dim_));
    bool all_zero = std::all_of(values.begin(), values.end(),
                                [](double v) { return v == 0.0; });
    if (all_zero)
        throw ZeroVector("zero vector for token '" + token + "'");
    if (index_.contains(token)) return false;
    index_.emplace(std::move(token), index_.size());
    data_.insert(data_.end(), values.begin(), values.end());
    return true;
}

std::vector<std::string> EmbeddingTable::tokens() const {
    std::vector<std::string> out(index_.size());
    for (const auto& [tok, i] : index_) out[i] = tok;
    return out;
}

EmbeddingTable load_embeddings(std::istream& in, std::optional<std::size_t> expected_dimension,
                               EmbeddingLoadStats* stats) {
    EmbeddingTable table;
    if (expected_dimension) table.set_dimension(*expected_dimension);

    EmbeddingLoadStats local;
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::size_t sp = line.find(' ');
        if (sp == std::string::npos || sp == 0)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'token v1 v2 ...'");
        std::string token = line.substr(0, sp);

        values.clear();
        const char* p = line.data() + sp + 1;
        const char* end = line.data() + line.size();
        while (p < end) {
            while (p < end && *p == ' ') ++p;
            if (p == end) break;
            double v;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{} || (next < end && *next != ' '))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": non-numeric component '" + std::string(p, next == p ? end : next) + "'");
            values.push_back(v);
            p = next;
        }
        if (values.empty())
            throw ParseError("line " + std::to_string(line_no) + ": no components");
        if (table.dimension() != 0 && values.size() != table.dimension())
            throw DimensionMismatch("line " + std::to_string(line_no) + ": " +
                                    std::to_string(values.size()) + " components, expected " +
                                    std::to_string(table.dimension()));
        try {
            if (table.insert(std::move(token), values))
                ++local.loaded;
            else
                ++local.duplicates_skipped;
        } catch (const ZeroVector&) {
            throw ZeroVector("line " + std::to_string(line_no) + ": all components zero");
        }
    }
    if (local.loaded == 0) throw EmptyTable("no valid embedding lines");
    if (stats) *stats = local;
    return table;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatch("cosine: dimensions " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw ZeroVector("cosine: zero-norm vector");
    double score = dot / std::sqrt(na * nb);
    return std::clamp(score, -1.0, 1.0);
}

SimilarityRow similarity_row(const EmbeddingTable& table, std::string_view source,
                             const Vocabulary& candidates) {
    auto src = table.find(source);
    if (src.empty())
        throw SourceNotFound("token '" + std::string(source) + "' not in embedding table");

    SimilarityRow row;
    row.source = std::string(source);
    row.scores.reserve(candidates.size());
    for (std::size_t t = 0; t < candidates.size(); ++t) {
        auto cand = table.find(candidates.word(t));
        if (cand.empty())
            row.missing.push_back(t);
        else
            row.scores.emplace_back(t, cosine_similarity(src, cand));
    }
    return row;
}

std::vector<std::size_t> top_k_neighbors(const SimilarityRow& row, const Vocabulary& vocab,
                                         std::size_t k) {
    // The ranking omits the source word itself; it is re-added up front, so
    // the result holds the source plus up to k neighbors.
    const auto self = vocab.find(row.source);
    auto ranked = row.scores;
    if (self)
        std::erase_if(ranked, [&](const auto& p) { return p.first == *self; });
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return vocab.word(a.first) < vocab.word(b.first);
    });
    if (ranked.size() > k) ranked.resize(k);

    std::vector<std::size_t> out;
    out.reserve(ranked.size() + 1);
    if (self) out.push_back(*self);
    for (const auto& [idx, score] : ranked) out.push_back(idx);
    return out;
}

std::vector<std::size_t> threshold_neighbors(const SimilarityRow& row, const Vocabulary& vocab,
                                             double phi) {
    std::vector<std::size_t> out;
    for (const auto& [idx, score] : row.scores)
        if (score >= phi) out.push_back(idx);
    if (auto self = vocab.find(row.source)) {
        if (std::find(out.begin(), out.end(), *self) == out.end()) out.push_back(*self);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace tmboost
