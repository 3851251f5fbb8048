#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tmboost/corpus.hpp"
#include "tmboost/errors.hpp"

namespace tmboost {

struct WordVector {
    std::string token;
    std::vector<double> values;
};

/// Immutable token -> d-dimensional vector store. Vectors are kept in one
/// flat array; lookups return a view of the row.
class EmbeddingTable {
public:
    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return index_.size(); }

    bool contains(std::string_view token) const {
        return index_.contains(std::string(token));
    }

    /// Row view, or an empty span when the token is absent.
    std::span<const double> find(std::string_view token) const {
        auto it = index_.find(std::string(token));
        if (it == index_.end()) return {};
        return {data_.data() + it->second * dim_, dim_};
    }

    /// Insert one entry; rejects zero vectors and dimension mismatches.
    /// Returns false for a duplicate token (first occurrence wins).
    bool insert(std::string token, std::span<const double> values);

    void set_dimension(std::size_t d) { dim_ = d; }

    std::vector<std::string> tokens() const;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct EmbeddingLoadStats {
    std::size_t loaded = 0;
    std::size_t duplicates_skipped = 0;
};

/// Read a GloVe-style text table: one line per token, single-space-separated
/// decimal components, no header.
EmbeddingTable load_embeddings(std::istream& in,
                               std::optional<std::size_t> expected_dimension = {},
                               EmbeddingLoadStats* stats = nullptr);

/// (a.b)/(|a||b|), clamped to [-1, 1]. Symmetric by construction.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Similarity of one source token against every candidate vocabulary word.
struct SimilarityRow {
    std::string source;
    std::vector<std::pair<std::size_t, double>> scores;  // (vocab index, score)
    std::vector<std::size_t> missing;                    // candidates absent from the table
};

SimilarityRow similarity_row(const EmbeddingTable& table, std::string_view source,
                             const Vocabulary& candidates);

/// The source's own index united with the k highest-scoring other candidate
/// indices (the ranking omits the source, mirroring GloVe neighbor tooling).
/// Ordered by descending score, ties by ascending token text.
std::vector<std::size_t> top_k_neighbors(const SimilarityRow& row, const Vocabulary& vocab,
                                         std::size_t k);

/// All candidate indices with score >= phi, united with the source's own
/// index. Returned in ascending index order.
std::vector<std::size_t> threshold_neighbors(const SimilarityRow& row, const Vocabulary& vocab,
                                             double phi);

} // namespace tmboost
