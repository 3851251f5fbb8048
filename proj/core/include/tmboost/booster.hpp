#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "tmboost/corpus.hpp"
#include "tmboost/embedding.hpp"

namespace tmboost {

enum class PolicyKind { None, TopK, Threshold };

/// Neighbor selection policy: none (identity), top-k, or cosine threshold.
struct ExpansionPolicy {
    PolicyKind kind = PolicyKind::None;
    std::size_t k = 0;    // TopK
    double phi = 0.0;     // Threshold, in [-1, 1]

    static ExpansionPolicy none() { return {}; }
    static ExpansionPolicy top_k(std::size_t k);
    static ExpansionPolicy threshold(double phi);

    /// "none" | "topk:K" | "thresh:PHI", as accepted on the command line.
    static ExpansionPolicy parse(const std::string& text);
    std::string to_string() const;
};

/// Per-vocabulary-word neighbor sets. sets[r] always contains r; vocabulary
/// words with no embedding expand to themselves only and are listed in oov.
struct ExpansionMap {
    ExpansionPolicy policy;
    std::vector<std::vector<std::uint32_t>> sets;  // each ascending
    std::vector<std::uint32_t> oov;                // ascending
    std::uint64_t vocab_hash = 0;

    std::size_t size() const { return sets.size(); }
};

/// 64-bit FNV-1a over the vocabulary words joined with '\n'.
std::uint64_t vocab_fnv1a(const Vocabulary& vocab);

ExpansionMap build_expansion_map(const Vocabulary& vocab, const EmbeddingTable& table,
                                 const ExpansionPolicy& policy);

/// The policy-None map: A_r = {r} for every r.
ExpansionMap identity_expansion(const Vocabulary& vocab);

/// X_mod: union of A_r over the set bits of `bow`.
BitVec boost(const BitVec& bow, const ExpansionMap& map);

void save_expansion_map(std::ostream& out, const ExpansionMap& map);
ExpansionMap load_expansion_map(std::istream& in);

} // namespace tmboost
