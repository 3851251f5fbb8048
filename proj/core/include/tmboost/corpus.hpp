#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tmboost/bitvec.hpp"

namespace tmboost {

/// One classification unit: an interned 0-based label plus its token stream.
struct Document {
    int label = 0;
    std::vector<std::string> tokens;
};

struct LabeledDataset {
    std::vector<Document> documents;
    std::vector<std::string> labels;  // interned in first-appearance order
    std::size_t dropped_empty = 0;    // lines whose text tokenized to nothing

    std::size_t num_classes() const { return labels.size(); }
};

/// Ordered task vocabulary w_0..w_{m-1} with its inverse index.
class Vocabulary {
public:
    Vocabulary() = default;
    static Vocabulary from_words(std::vector<std::string> words);

    std::size_t size() const { return words_.size(); }
    const std::string& word(std::size_t i) const { return words_[i]; }
    const std::vector<std::string>& words() const { return words_; }

    std::optional<std::size_t> find(std::string_view token) const {
        auto it = index_.find(std::string(token));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Lowercase and split on maximal runs of non-alphanumeric characters.
std::vector<std::string> tokenize(std::string_view text);

/// Most frequent `max_size` tokens of the training split, frequency ties
/// broken by ascending token text.
Vocabulary build_vocabulary(const LabeledDataset& dataset, std::size_t max_size);

/// Boolean presence vector over the vocabulary; out-of-vocabulary tokens
/// are ignored.
BitVec vectorize(const Document& doc, const Vocabulary& vocab);

/// Parse `label<TAB>text` lines into a dataset.
LabeledDataset load_tsv(std::istream& in);

} // namespace tmboost
