#include "tmboost/tm.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "tmboost/errors.hpp"

namespace tmboost {

int ta_transition(int state, Signal signal, int states_per_action) {
    const int n = states_per_action;
    if (signal == Signal::Reward) {
        // Deeper into the current action, saturating at the ends.
        if (state <= n) return std::max(1, state - 1);
        return std::min(2 * n, state + 1);
    }
    // Penalty: toward the opposite action, crossing the boundary when at it.
    if (state <= n) return state + 1;
    return state - 1;
}

TmModel::TmModel(const TmConfig& config, std::size_t vocab_size) : cfg_(config), m_(vocab_size) {
    if (cfg_.clauses_per_class < 2 || cfg_.clauses_per_class % 2 != 0)
        throw InvalidConfig("clauses_per_class must be a positive even integer");
    if (cfg_.classes < 2) throw InvalidConfig("need at least 2 classes");
    if (cfg_.voting_target < 1) throw InvalidConfig("voting_target must be positive");
    if (!(cfg_.specificity > 1.0)) throw InvalidConfig("specificity must be > 1");
    if (cfg_.states_per_action < 1) throw InvalidConfig("states_per_action must be >= 1");
    if (2 * cfg_.states_per_action > 65535)
        throw InvalidConfig("states_per_action too large for 16-bit state storage");
    if (m_ < 1) throw InvalidConfig("vocabulary size must be >= 1");

    const std::size_t clauses = static_cast<std::size_t>(cfg_.classes) * cfg_.clauses_per_class;
    // All TAs start at N: the exclude state adjacent to the boundary, so
    // every clause starts empty.
    states_.assign(clauses * 2 * m_, static_cast<std::uint16_t>(cfg_.states_per_action));
    include_orig_.assign(clauses, BitVec(m_));
    include_neg_.assign(clauses, BitVec(m_));
    include_counts_.assign(clauses, 0);
}

std::uint16_t TmModel::state(int cls, int clause, std::size_t literal) const {
    return states_[clause_base(cls, clause) + literal];
}

void TmModel::set_state(int cls, int clause, std::size_t literal, std::uint16_t value) {
    if (value < 1 || value > 2 * cfg_.states_per_action)
        throw IndexOutOfRange("TA state out of [1, 2N]");
    const std::size_t ci = clause_index(cls, clause);
    std::uint16_t& slot = states_[clause_base(cls, clause) + literal];
    const int n = cfg_.states_per_action;
    const bool was_included = slot > n;
    const bool now_included = value > n;
    slot = value;
    if (was_included != now_included) {
        BitVec& mask = literal < m_ ? include_orig_[ci] : include_neg_[ci];
        const std::size_t bit = literal < m_ ? literal : literal - m_;
        if (now_included) {
            mask.set(bit);
            ++include_counts_[ci];
        } else {
            mask.reset(bit);
            --include_counts_[ci];
        }
    }
}

std::size_t TmModel::include_count(int cls, int clause) const {
    return include_counts_[clause_index(cls, clause)];
}

const BitVec& TmModel::included_original(int cls, int clause) const {
    return include_orig_[clause_index(cls, clause)];
}

const BitVec& TmModel::included_negated(int cls, int clause) const {
    return include_neg_[clause_index(cls, clause)];
}

int TmModel::clause_output(int cls, int clause, const BitVec& x, Mode mode) const {
    if (x.size() != m_)
        throw LengthMismatch("input length " + std::to_string(x.size()) + " vs m=" +
                             std::to_string(m_));
    const std::size_t ci = clause_index(cls, clause);
    if (include_counts_[ci] == 0) return mode == Mode::Learning ? 1 : 0;
    if (!include_orig_[ci].is_subset_of(x)) return 0;
    if (include_neg_[ci].intersects(x)) return 0;
    return 1;
}

int TmModel::class_sum(int cls, const BitVec& x, Mode mode) const {
    int sum = 0;
    for (int c = 0; c < cfg_.clauses_per_class; ++c) {
        int out = clause_output(cls, c, x, mode);
        sum += positive_polarity(c) ? out : -out;
    }
    return std::clamp(sum, -cfg_.voting_target, cfg_.voting_target);
}

int TmModel::predict(const BitVec& x) const {
    int best_class = 0;
    int best_sum = class_sum(0, x, Mode::Inference);
    for (int j = 1; j < cfg_.classes; ++j) {
        int sum = class_sum(j, x, Mode::Inference);
        if (sum > best_sum) {
            best_sum = sum;
            best_class = j;
        }
    }
    return best_class;
}

void TmModel::apply(int cls, int clause, std::size_t literal, Signal signal) {
    int next = ta_transition(state(cls, clause, literal), signal, cfg_.states_per_action);
    set_state(cls, clause, literal, static_cast<std::uint16_t>(next));
}

void TmModel::type_i_feedback(int cls, int clause, const BitVec& x, FeedbackRng& rng) {
    const int out = clause_output(cls, clause, x, Mode::Learning);
    const double s = cfg_.specificity;
    const double p_trim = 1.0 / s;
    const double p_refine = (s - 1.0) / s;

    for (std::size_t t = 0; t < 2 * m_; ++t) {
        const bool value = t < m_ ? x.test(t) : !x.test(t - m_);
        const bool included = literal_included(cls, clause, t);
        if (out == 1 && value) {
            // Reinforce the literal toward inclusion.
            if (cfg_.boost_true_positive || rng.next_unit() < p_refine)
                apply(cls, clause, t, included ? Signal::Reward : Signal::Penalty);
        } else if (out == 1) {
            // Zero-valued literal in a firing clause: push toward exclusion.
            if (rng.next_unit() < p_trim)
                apply(cls, clause, t, included ? Signal::Penalty : Signal::Reward);
        } else {
            // Clause did not fire: gently erase toward the empty clause.
            if (rng.next_unit() < p_trim)
                apply(cls, clause, t, included ? Signal::Penalty : Signal::Reward);
        }
    }
}

void TmModel::type_ii_feedback(int cls, int clause, const BitVec& x) {
    // Deterministic: every zero-valued excluded literal moves one step
    // toward inclusion, so the clause learns to reject this input.
    for (std::size_t t = 0; t < 2 * m_; ++t) {
        const bool value = t < m_ ? x.test(t) : !x.test(t - m_);
        if (!value && !literal_included(cls, clause, t))
            apply(cls, clause, t, Signal::Penalty);
    }
}

void train_epoch(TmModel& model, std::span<const Sample> samples, int epoch) {
    const TmConfig& cfg = model.config();
    const int q = cfg.classes;
    const int l = cfg.clauses_per_class;
    const double two_t = 2.0 * cfg.voting_target;

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 shuffler(splitmix64(cfg.seed ^ (0x5bf03d1ull + static_cast<std::uint64_t>(epoch))));
    std::shuffle(order.begin(), order.end(), shuffler);

    for (std::size_t si : order) {
        const Sample& sample = samples[si];
        const int y = sample.label;
        if (y < 0 || y >= q)
            throw LabelOutOfRange("label " + std::to_string(y) + " not in [0, " +
                                  std::to_string(q) + ")");

        // Target class: Type I on positive clauses, Type II on negative.
        const int f_target = model.class_sum(y, sample.x, Mode::Learning);
        const double p_target = (cfg.voting_target - f_target) / two_t;
        for (int c = 0; c < l; ++c) {
            FeedbackRng rng(cfg.seed, epoch, si, y, c);
            if (rng.next_unit() >= p_target) continue;
            if (TmModel::positive_polarity(c)) {
                model.type_i_feedback(y, c, sample.x, rng);
            } else if (model.clause_output(y, c, sample.x, Mode::Learning) == 1) {
                model.type_ii_feedback(y, c, sample.x);
            }
        }

        // One uniformly sampled negative class, mirrored treatment.
        if (q < 2) continue;
        FeedbackRng pick(cfg.seed, epoch, si, q, 0);
        int neg = static_cast<int>(pick.next() % (q - 1));
        if (neg >= y) ++neg;

        const int f_neg = model.class_sum(neg, sample.x, Mode::Learning);
        const double p_neg = (cfg.voting_target + f_neg) / two_t;
        for (int c = 0; c < l; ++c) {
            FeedbackRng rng(cfg.seed, epoch, si, neg, c);
            if (rng.next_unit() >= p_neg) continue;
            if (TmModel::positive_polarity(c)) {
                if (model.clause_output(neg, c, sample.x, Mode::Learning) == 1)
                    model.type_ii_feedback(neg, c, sample.x);
            } else {
                model.type_i_feedback(neg, c, sample.x, rng);
            }
        }
    }
}

EvalResult evaluate(const TmModel& model, std::span<const Sample> samples, int threads) {
    if (samples.empty()) throw EmptyDataset("cannot evaluate on an empty dataset");
    const int q = model.config().classes;

    EvalResult result;
    result.per_class_correct.assign(q, 0);
    result.per_class_total.assign(q, 0);

    std::vector<int> predictions(samples.size());
    threads = std::max(1, threads);
    if (threads == 1 || samples.size() < 64) {
        for (std::size_t i = 0; i < samples.size(); ++i)
            predictions[i] = model.predict(samples[i].x);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (samples.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(samples.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i)
                    predictions[i] = model.predict(samples[i].x);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::size_t correct = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const int y = samples[i].label;
        if (y < 0 || y >= q)
            throw LabelOutOfRange("label " + std::to_string(y) + " out of range");
        ++result.per_class_total[y];
        if (predictions[i] == y) {
            ++correct;
            ++result.per_class_correct[y];
        }
    }
    result.accuracy = static_cast<double>(correct) / samples.size();
    return result;
}

void TmModel::save(std::ostream& out) const {
    char sbuf[64];
    std::snprintf(sbuf, sizeof sbuf, "%.17g", cfg_.specificity);
    out << "tmboost-model v1\n";
    out << "l=" << cfg_.clauses_per_class << " q=" << cfg_.classes << " T=" << cfg_.voting_target
        << " s=" << sbuf << " N=" << cfg_.states_per_action << " m=" << m_ << "\n";
    for (int j = 0; j < cfg_.classes; ++j) {
        for (int c = 0; c < cfg_.clauses_per_class; ++c) {
            out << "class=" << j << " clause=" << c << " states=";
            const std::size_t base = clause_base(j, c);
            for (std::size_t t = 0; t < 2 * m_; ++t) {
                if (t > 0) out << ' ';
                out << states_[base + t];
            }
            out << "\n";
        }
    }
}

TmModel TmModel::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "tmboost-model v1")
        throw ParseError("model file: bad magic line");
    if (!std::getline(in, line)) throw ParseError("model file: missing config line");

    TmConfig cfg;
    std::size_t m = 0;
    std::istringstream header(line);
    std::string field;
    while (header >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw ParseError("model file: bad config field '" + field + "'");
        std::string key = field.substr(0, eq);
        std::string val = field.substr(eq + 1);
        if (key == "l") cfg.clauses_per_class = std::stoi(val);
        else if (key == "q") cfg.classes = std::stoi(val);
        else if (key == "T") cfg.voting_target = std::stoi(val);
        else if (key == "s") cfg.specificity = std::stod(val);
        else if (key == "N") cfg.states_per_action = std::stoi(val);
        else if (key == "m") m = std::stoull(val);
        else throw ParseError("model file: unknown config key '" + key + "'");
    }

    TmModel model(cfg, m);
    std::size_t line_no = 2;
    for (int j = 0; j < cfg.classes; ++j) {
        for (int c = 0; c < cfg.clauses_per_class; ++c) {
            if (!std::getline(in, line))
                throw ParseError("model file: truncated at class " + std::to_string(j));
            ++line_no;
            const std::string prefix =
                "class=" + std::to_string(j) + " clause=" + std::to_string(c) + " states=";
            if (line.rfind(prefix, 0) != 0)
                throw ParseError("model file line " + std::to_string(line_no) +
                                 ": expected '" + prefix + "...'");
            std::istringstream vs(line.substr(prefix.size()));
            for (std::size_t t = 0; t < 2 * m; ++t) {
                int v;
                if (!(vs >> v) || v < 1 || v > 2 * cfg.states_per_action)
                    throw ParseError("model file line " + std::to_string(line_no) +
                                     ": bad TA state");
                model.set_state(j, c, t, static_cast<std::uint16_t>(v));
            }
        }
    }
    return model;
}

} // namespace tmboost
