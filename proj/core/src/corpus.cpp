#include "tmboost/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "tmboost/errors.hpp"

namespace tmboost {

Vocabulary Vocabulary::from_words(std::vector<std::string> words) {
    Vocabulary v;
    v.words_ = std::move(words);
    for (std::size_t i = 0; i < v.words_.size(); ++i) {
        auto [it, inserted] = v.index_.emplace(v.words_[i], i);
        if (!inserted)
            throw DataError("duplicate vocabulary word '" + v.words_[i] + "'");
    }
    return v;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Vocabulary build_vocabulary(const LabeledDataset& dataset, std::size_t max_size) {
    if (dataset.documents.empty()) throw EmptyDataset("no documents to build vocabulary from");

    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& doc : dataset.documents)
        for (const auto& tok : doc.tokens) ++counts[tok];

    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > max_size) ranked.resize(max_size);

    std::vector<std::string> words;
    words.reserve(ranked.size());
    for (auto& [tok, n] : ranked) words.push_back(std::move(tok));
    return Vocabulary::from_words(std::move(words));
}

BitVec vectorize(const Document& doc, const Vocabulary& vocab) {
    BitVec bow(vocab.size());
    for (const auto& tok : doc.tokens)
        if (auto idx = vocab.find(tok)) bow.set(*idx);
    return bow;
}

LabeledDataset load_tsv(std::istream& in) {
    LabeledDataset ds;
    std::unordered_map<std::string, int> label_ids;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw MalformedLine("line " + std::to_string(line_no) + ": missing TAB separator");

        std::string label = line.substr(0, tab);
        auto tokens = tokenize(std::string_view(line).substr(tab + 1));
        if (tokens.empty()) {
            ++ds.dropped_empty;
            continue;
        }

        auto [it, inserted] = label_ids.emplace(label, static_cast<int>(ds.labels.size()));
        if (inserted) ds.labels.push_back(label);
        ds.documents.push_back({it->second, std::move(tokens)});
    }
    if (ds.documents.empty()) throw EmptyDataset("no usable records");
    return ds;
}

} // namespace tmboost
