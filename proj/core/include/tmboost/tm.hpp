#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "tmboost/bitvec.hpp"
#include "tmboost/rng.hpp"

namespace tmboost {

struct TmConfig {
    int clauses_per_class = 0;    // l, positive even
    int classes = 0;              // q >= 2
    int voting_target = 0;        // T > 0
    double specificity = 0.0;     // s > 1
    int states_per_action = 100;  // N >= 1
    int epochs = 0;
    std::uint64_t seed = 0;
    bool boost_true_positive = false;
};

enum class Mode { Learning, Inference };
enum class Signal { Reward, Penalty };

/// One TA step. States 1..N are Exclude (deeper toward 1), N+1..2N Include
/// (deeper toward 2N). Reward deepens and saturates; Penalty moves toward
/// the opposite action, crossing the boundary when at it.
int ta_transition(int state, Signal signal, int states_per_action);

struct Sample {
    BitVec x;
    int label = 0;
};

struct EvalResult {
    double accuracy = 0.0;
    std::vector<std::size_t> per_class_correct;
    std::vector<std::size_t> per_class_total;
};

/// Multiclass Tsetlin Machine. Clause c of a class (0-based) has positive
/// polarity iff c is even, matching 1-based odd indexing. Literal positions
/// 0..m-1 are the original inputs, m..2m-1 their negations.
class TmModel {
public:
    TmModel() = default;
    TmModel(const TmConfig& config, std::size_t vocab_size);

    const TmConfig& config() const { return cfg_; }
    std::size_t vocab_size() const { return m_; }

    static bool positive_polarity(int clause) { return clause % 2 == 0; }

    std::uint16_t state(int cls, int clause, std::size_t literal) const;
    void set_state(int cls, int clause, std::size_t literal, std::uint16_t value);

    bool literal_included(int cls, int clause, std::size_t literal) const {
        return state(cls, clause, literal) > cfg_.states_per_action;
    }
    std::size_t include_count(int cls, int clause) const;

    /// Include masks over the original / negated literal halves.
    const BitVec& included_original(int cls, int clause) const;
    const BitVec& included_negated(int cls, int clause) const;

    int clause_output(int cls, int clause, const BitVec& x, Mode mode) const;

    /// Positive-polarity votes minus negative-polarity votes, clamped to
    /// [-T, T].
    int class_sum(int cls, const BitVec& x, Mode mode) const;

    /// Argmax of inference-mode class sums, ties to the lowest class index.
    int predict(const BitVec& x) const;

    void type_i_feedback(int cls, int clause, const BitVec& x, FeedbackRng& rng);
    void type_ii_feedback(int cls, int clause, const BitVec& x);

    friend bool operator==(const TmModel&, const TmModel&) = default;

    void save(std::ostream& out) const;
    static TmModel load(std::istream& in);

private:
    void apply(int cls, int clause, std::size_t literal, Signal signal);
    std::size_t clause_base(int cls, int clause) const {
        return (static_cast<std::size_t>(cls) * cfg_.clauses_per_class + clause) * 2 * m_;
    }
    std::size_t clause_index(int cls, int clause) const {
        return static_cast<std::size_t>(cls) * cfg_.clauses_per_class + clause;
    }

    TmConfig cfg_;
    std::size_t m_ = 0;
    std::vector<std::uint16_t> states_;   // q * l * 2m, each in [1, 2N]
    std::vector<BitVec> include_orig_;    // q * l masks of length m
    std::vector<BitVec> include_neg_;
    std::vector<std::uint32_t> include_counts_;
};

/// One pass over the dataset in seed-derived shuffled order, applying
/// Type I / Type II feedback to the target class and one uniformly sampled
/// negative class per sample.
void train_epoch(TmModel& model, std::span<const Sample> samples, int epoch);

EvalResult evaluate(const TmModel& model, std::span<const Sample> samples, int threads = 1);

} // namespace tmboost
