// Throughput benchmarks for the hot paths: clause-bank voting and
// per-document boosting.

#include <random>

#include <benchmark/benchmark.h>

#include "tmboost/booster.hpp"
#include "tmboost/tm.hpp"

using namespace tmboost;

namespace {

BitVec random_bow(std::size_t m, double density, std::mt19937_64& rng) {
    BitVec x(m);
    std::bernoulli_distribution bit(density);
    for (std::size_t i = 0; i < m; ++i)
        if (bit(rng)) x.set(i);
    return x;
}

TmModel random_model(int classes, int clauses, std::size_t m, std::mt19937_64& rng) {
    TmConfig cfg;
    cfg.clauses_per_class = clauses;
    cfg.classes = classes;
    cfg.voting_target = 80;
    cfg.specificity = 9.0;
    cfg.states_per_action = 100;
    TmModel model(cfg, m);
    // Sparse random inclusions, roughly what a trained model looks like.
    std::uniform_int_distribution<int> state(1, 2 * cfg.states_per_action);
    std::bernoulli_distribution touch(0.01);
    for (int j = 0; j < classes; ++j)
        for (int c = 0; c < clauses; ++c)
            for (std::size_t t = 0; t < 2 * m; ++t)
                if (touch(rng))
                    model.set_state(j, c, t, static_cast<std::uint16_t>(state(rng)));
    return model;
}

void BM_ClassSum(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    TmModel model = random_model(2, 500, m, rng);
    BitVec x = random_bow(m, 0.02, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(model.class_sum(0, x, Mode::Inference));
    state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_ClassSum)->Arg(1000)->Arg(5000);

void BM_Boost(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    std::vector<std::string> words(m);
    for (std::size_t i = 0; i < m; ++i) words[i] = "w" + std::to_string(i);
    auto vocab = Vocabulary::from_words(std::move(words));
    ExpansionMap map = identity_expansion(vocab);
    std::uniform_int_distribution<std::uint32_t> idx(0, static_cast<std::uint32_t>(m - 1));
    for (auto& set : map.sets) {
        for (int extra = 0; extra < 3; ++extra) set.push_back(idx(rng));
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    BitVec x = random_bow(m, 0.02, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(boost(x, map));
}
BENCHMARK(BM_Boost)->Arg(1000)->Arg(5000);

} // namespace

BENCHMARK_MAIN();
