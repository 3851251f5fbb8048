#pragma once

#include <cstdint>

namespace tmboost {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Counter-based generator keyed on (seed, epoch, sample, class, clause),
/// so feedback draws do not depend on any parallel schedule.
class FeedbackRng {
public:
    FeedbackRng(std::uint64_t seed, std::uint64_t epoch, std::uint64_t sample,
                std::uint64_t cls, std::uint64_t clause) {
        state_ = splitmix64(seed);
        state_ = splitmix64(state_ ^ epoch);
        state_ = splitmix64(state_ ^ sample);
        state_ = splitmix64(state_ ^ cls);
        state_ = splitmix64(state_ ^ clause);
    }

    std::uint64_t next() {
        state_ = splitmix64(state_);
        return state_;
    }

    /// Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace tmboost
