#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tmboost/errors.hpp"

namespace tmboost {

/// Fixed-length bit vector backed by 64-bit words. Used both for Boolean
/// bag-of-words document vectors and for clause include masks, so that
/// clause evaluation runs word-at-a-time.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    /// Population count.
    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += std::popcount(w);
        return n;
    }

    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    BitVec& operator|=(const BitVec& o) {
        check_same_length(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    /// True iff every set bit of *this is also set in `o`.
    bool is_subset_of(const BitVec& o) const {
        check_same_length(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    /// True iff *this and `o` share at least one set bit.
    bool intersects(const BitVec& o) const {
        check_same_length(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    void check_same_length(const BitVec& o) const {
        if (size_ != o.size_)
            throw LengthMismatch("bit vector length mismatch: " + std::to_string(size_) +
                                 " vs " + std::to_string(o.size_));
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace tmboost
