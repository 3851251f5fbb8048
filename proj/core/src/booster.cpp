#include "tmboost/booster.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tmboost/errors.hpp"

namespace tmboost {

ExpansionPolicy ExpansionPolicy::top_k(std::size_t k) {
    if (k < 1) throw InvalidConfig("topk policy requires k >= 1");
    ExpansionPolicy p;
    p.kind = PolicyKind::TopK;
    p.k = k;
    return p;
}

ExpansionPolicy ExpansionPolicy::threshold(double phi) {
    if (!(phi >= -1.0 && phi <= 1.0)) throw InvalidConfig("threshold policy requires phi in [-1, 1]");
    ExpansionPolicy p;
    p.kind = PolicyKind::Threshold;
    p.phi = phi;
    return p;
}

ExpansionPolicy ExpansionPolicy::parse(const std::string& text) {
    if (text == "none") return none();
    if (text.starts_with("topk:")) {
        std::size_t k = 0;
        auto body = text.substr(5);
        auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
        if (ec != std::errc{} || p != body.data() + body.size())
            throw InvalidConfig("bad policy '" + text + "': expected topk:<positive integer>");
        return top_k(k);
    }
    if (text.starts_with("thresh:")) {
        auto body = text.substr(7);
        double phi;
        auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), phi);
        if (ec != std::errc{} || p != body.data() + body.size())
            throw InvalidConfig("bad policy '" + text + "': expected thresh:<real>");
        return threshold(phi);
    }
    throw InvalidConfig("unknown policy '" + text + "' (none | topk:K | thresh:PHI)");
}

std::string ExpansionPolicy::to_string() const {
    switch (kind) {
        case PolicyKind::None: return "none";
        case PolicyKind::TopK: return "topk:" + std::to_string(k);
        case PolicyKind::Threshold: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "thresh:%.17g", phi);
            return buf;
        }
    }
    return "none";
}

std::uint64_t vocab_fnv1a(const Vocabulary& vocab) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](char c) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    };
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (i > 0) mix('\n');
        for (char c : vocab.word(i)) mix(c);
    }
    return h;
}

ExpansionMap identity_expansion(const Vocabulary& vocab) {
    ExpansionMap map;
    map.policy = ExpansionPolicy::none();
    map.vocab_hash = vocab_fnv1a(vocab);
    map.sets.resize(vocab.size());
    for (std::uint32_t r = 0; r < vocab.size(); ++r) map.sets[r] = {r};
    return map;
}

ExpansionMap build_expansion_map(const Vocabulary& vocab, const EmbeddingTable& table,
                                 const ExpansionPolicy& policy) {
    if (policy.kind == PolicyKind::None) return identity_expansion(vocab);

    ExpansionMap map;
    map.policy = policy;
    map.vocab_hash = vocab_fnv1a(vocab);
    map.sets.resize(vocab.size());
    for (std::uint32_t r = 0; r < vocab.size(); ++r) {
        if (!table.contains(vocab.word(r))) {
            map.sets[r] = {r};
            map.oov.push_back(r);
            continue;
        }
        auto row = similarity_row(table, vocab.word(r), vocab);
        std::vector<std::size_t> neighbors =
            policy.kind == PolicyKind::TopK ? top_k_neighbors(row, vocab, policy.k)
                                            : threshold_neighbors(row, vocab, policy.phi);
        auto& set = map.sets[r];
        set.assign(neighbors.begin(), neighbors.end());
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    return map;
}

BitVec boost(const BitVec& bow, const ExpansionMap& map) {
    if (bow.size() != map.size())
        throw LengthMismatch("bow length " + std::to_string(bow.size()) +
                             " vs expansion map size " + std::to_string(map.size()));
    BitVec out(bow.size());
    for (std::size_t r = 0; r < bow.size(); ++r) {
        if (!bow.test(r)) continue;
        for (auto t : map.sets[r]) out.set(t);
    }
    return out;
}

void save_expansion_map(std::ostream& out, const ExpansionMap& map) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016" PRIx64, map.vocab_hash);
    out << "policy=" << map.policy.to_string() << " vocab_hash=" << hash << "\n";
    for (std::size_t r = 0; r < map.sets.size(); ++r) {
        out << r << ":";
        for (auto t : map.sets[r]) out << ' ' << t;
        out << "\n";
    }
}

ExpansionMap load_expansion_map(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("expansion map: empty stream");

    ExpansionMap map;
    std::istringstream header(line);
    std::string field;
    bool have_policy = false, have_hash = false;
    while (header >> field) {
        if (field.starts_with("policy=")) {
            map.policy = ExpansionPolicy::parse(field.substr(7));
            have_policy = true;
        } else if (field.starts_with("vocab_hash=")) {
            auto hex = field.substr(11);
            map.vocab_hash = std::strtoull(hex.c_str(), nullptr, 16);
            have_hash = true;
        }
    }
    if (!have_policy || !have_hash)
        throw ParseError("expansion map: bad header '" + line + "'");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string idx_field;
        ls >> idx_field;
        if (idx_field.empty() || idx_field.back() != ':')
            throw ParseError("expansion map line " + std::to_string(line_no) +
                             ": expected '<r>: ...'");
        std::size_t r = std::stoull(idx_field.substr(0, idx_field.size() - 1));
        if (r != map.sets.size())
            throw ParseError("expansion map line " + std::to_string(line_no) +
                             ": indices must be ascending from 0");
        std::vector<std::uint32_t> set;
        std::uint32_t t;
        while (ls >> t) set.push_back(t);
        if (!std::binary_search(set.begin(), set.end(), r))
            throw ParseError("expansion map line " + std::to_string(line_no) +
                             ": set must contain its own index");
        map.sets.push_back(std::move(set));
    }
    if (map.sets.empty()) throw ParseError("expansion map: no entries");
    return map;
}

} // namespace tmboost
