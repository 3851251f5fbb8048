// tmboost: batch CLI for the boosted-BOW Tsetlin Machine text classifier.
//
// Subcommands: prepare, train, eval, explain, neighbors.
// Exit codes: 0 success, 1 usage/config error, 2 data/format error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmboost/booster.hpp"
#include "tmboost/corpus.hpp"
#include "tmboost/embedding.hpp"
#include "tmboost/errors.hpp"
#include "tmboost/interpret.hpp"
#include "tmboost/tm.hpp"

namespace fs = std::filesystem;
using namespace tmboost;

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    return in;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    return out;
}

void write_vocab(const fs::path& path, const Vocabulary& vocab) {
    auto out = open_output(path);
    for (std::size_t i = 0; i < vocab.size(); ++i) out << vocab.word(i) << "\n";
}

Vocabulary read_vocab(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) words.push_back(line);
    }
    if (words.empty()) throw DataError("vocabulary file '" + path + "' is empty");
    return Vocabulary::from_words(std::move(words));
}

int resolve_threads(int threads_flag) {
    if (threads_flag > 0) return threads_flag;
    if (const char* env = std::getenv("TMBOOST_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

struct PreparedData {
    Vocabulary vocab;
    ExpansionMap map;
    std::vector<Sample> train, test;
    std::vector<std::string> labels;
};

std::vector<Sample> boosted_samples(const LabeledDataset& ds, const Vocabulary& vocab,
                                    const ExpansionMap& map) {
    std::vector<Sample> out;
    out.reserve(ds.documents.size());
    for (const auto& doc : ds.documents)
        out.push_back({boost(vectorize(doc, vocab), map), doc.label});
    return out;
}

ExpansionMap make_map(const Vocabulary& vocab, const ExpansionPolicy& policy,
                      const std::string& embeddings_path) {
    if (policy.kind == PolicyKind::None) return identity_expansion(vocab);
    if (embeddings_path.empty())
        throw InvalidConfig("policy '" + policy.to_string() + "' requires --embeddings");
    auto in = open_input(embeddings_path);
    EmbeddingTable table = load_embeddings(in);
    return build_expansion_map(vocab, table, policy);
}

void check_artifacts(const Vocabulary& vocab, const ExpansionMap& map, const TmModel* model) {
    if (map.vocab_hash != vocab_fnv1a(vocab))
        throw VocabMismatch("expansion map was built for a different vocabulary (hash mismatch)");
    if (map.size() != vocab.size())
        throw VocabMismatch("expansion map size differs from vocabulary size");
    if (model && model->vocab_size() != vocab.size())
        throw VocabMismatch("model m=" + std::to_string(model->vocab_size()) +
                            " differs from vocabulary size " + std::to_string(vocab.size()));
}

int run_prepare(const std::string& train_path, const std::string& embeddings_path,
                const std::string& policy_str, std::size_t vocab_size, const std::string& out_dir) {
    ExpansionPolicy policy = ExpansionPolicy::parse(policy_str);
    auto train_in = open_input(train_path);
    LabeledDataset train = load_tsv(train_in);
    Vocabulary vocab = build_vocabulary(train, vocab_size);
    ExpansionMap map = make_map(vocab, policy, embeddings_path);

    fs::create_directories(out_dir);
    write_vocab(fs::path(out_dir) / "vocab.txt", vocab);
    auto map_out = open_output(fs::path(out_dir) / "expansion.map");
    save_expansion_map(map_out, map);

    std::cout << "vocab_size=" << vocab.size() << " oov=" << map.oov.size()
              << " dropped_empty=" << train.dropped_empty << "\n";
    return 0;
}

int run_train(const std::string& train_path, const std::string& test_path,
              const std::string& embeddings_path, const std::string& policy_str,
              std::size_t vocab_size, TmConfig cfg, int threads, const std::string& out_dir) {
    ExpansionPolicy policy = ExpansionPolicy::parse(policy_str);

    auto train_in = open_input(train_path);
    LabeledDataset train_ds = load_tsv(train_in);
    auto test_in = open_input(test_path);
    LabeledDataset test_ds = load_tsv(test_in);

    // Test labels must be mappable onto the training label space.
    for (auto& doc : test_ds.documents) {
        const std::string& name = test_ds.labels[doc.label];
        auto it = std::find(train_ds.labels.begin(), train_ds.labels.end(), name);
        if (it == train_ds.labels.end())
            throw DataError("test label '" + name + "' never appears in the training split");
        doc.label = static_cast<int>(it - train_ds.labels.begin());
    }

    Vocabulary vocab = build_vocabulary(train_ds, vocab_size);
    ExpansionMap map = make_map(vocab, policy, embeddings_path);

    cfg.classes = static_cast<int>(train_ds.num_classes());
    TmModel model(cfg, vocab.size());

    std::vector<Sample> train_samples = boosted_samples(train_ds, vocab, map);
    std::vector<Sample> test_samples = boosted_samples(test_ds, vocab, map);

    fs::create_directories(out_dir);
    write_vocab(fs::path(out_dir) / "vocab.txt", vocab);
    {
        auto map_out = open_output(fs::path(out_dir) / "expansion.map");
        save_expansion_map(map_out, map);
    }

    auto csv = open_output(fs::path(out_dir) / "metrics.csv");
    csv << "epoch,train_acc,test_acc,seconds\n";
    std::vector<double> test_accs;
    threads = resolve_threads(threads);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        auto t0 = std::chrono::steady_clock::now();
        train_epoch(model, train_samples, epoch);
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double train_acc = evaluate(model, train_samples, threads).accuracy;
        double test_acc = evaluate(model, test_samples, threads).accuracy;
        test_accs.push_back(test_acc);
        char row[128];
        std::snprintf(row, sizeof row, "%d,%.6f,%.6f,%.3f\n", epoch + 1, train_acc, test_acc,
                      seconds);
        csv << row;
        std::cout << "epoch " << epoch + 1 << "/" << cfg.epochs << " train_acc=" << train_acc
                  << " test_acc=" << test_acc << "\n";
    }
    if (cfg.epochs >= 50) {
        double sum = 0.0;
        for (std::size_t i = test_accs.size() - 50; i < test_accs.size(); ++i) sum += test_accs[i];
        char row[64];
        std::snprintf(row, sizeof row, "last50_mean=%.6f\n", sum / 50.0);
        csv << row;
    }

    auto model_out = open_output(fs::path(out_dir) / "model.txt");
    model.save(model_out);
    return 0;
}

int run_eval(const std::string& model_path, const std::string& test_path,
             const std::string& vocab_path, const std::string& map_path, int threads) {
    auto model_in = open_input(model_path);
    TmModel model = TmModel::load(model_in);
    Vocabulary vocab = read_vocab(vocab_path);
    auto map_in = open_input(map_path);
    ExpansionMap map = load_expansion_map(map_in);
    check_artifacts(vocab, map, &model);

    auto test_in = open_input(test_path);
    LabeledDataset test_ds = load_tsv(test_in);
    if (static_cast<int>(test_ds.num_classes()) > model.config().classes)
        throw DataError("test set has more classes than the model");

    std::vector<Sample> samples = boosted_samples(test_ds, vocab, map);
    EvalResult result = evaluate(model, samples, resolve_threads(threads));

    std::printf("accuracy=%.6f\n", result.accuracy);
    for (std::size_t j = 0; j < result.per_class_total.size(); ++j) {
        double recall = result.per_class_total[j]
                            ? static_cast<double>(result.per_class_correct[j]) /
                                  result.per_class_total[j]
                            : 0.0;
        const char* name = j < test_ds.labels.size() ? test_ds.labels[j].c_str() : "?";
        std::printf("class=%zu label=%s recall=%.6f n=%zu\n", j, name, recall,
                    result.per_class_total[j]);
    }
    return 0;
}

int run_explain(const std::string& model_path, const std::string& vocab_path,
                std::size_t min_includes) {
    auto model_in = open_input(model_path);
    TmModel model = TmModel::load(model_in);
    Vocabulary vocab = read_vocab(vocab_path);
    for (const auto& d : export_clauses(model, vocab, min_includes))
        std::cout << format_clause(d) << "\n";
    return 0;
}

int run_neighbors(const std::string& embeddings_path, const std::string& word,
                  const std::string& policy_str, const std::string& vocab_path) {
    ExpansionPolicy policy = ExpansionPolicy::parse(policy_str);
    auto in = open_input(embeddings_path);
    EmbeddingTable table = load_embeddings(in);

    Vocabulary candidates;
    if (!vocab_path.empty()) {
        candidates = read_vocab(vocab_path);
    } else {
        auto tokens = table.tokens();
        std::sort(tokens.begin(), tokens.end());
        candidates = Vocabulary::from_words(std::move(tokens));
    }

    if (!table.contains(word)) {
        std::cout << word << ": OOV\n";
        return 0;
    }
    auto row = similarity_row(table, word, candidates);
    std::vector<std::size_t> neighbors;
    switch (policy.kind) {
        case PolicyKind::None: {
            if (auto self = candidates.find(word)) neighbors.push_back(*self);
            break;
        }
        case PolicyKind::TopK:
            neighbors = top_k_neighbors(row, candidates, policy.k);
            break;
        case PolicyKind::Threshold:
            neighbors = threshold_neighbors(row, candidates, policy.phi);
            break;
    }
    std::cout << word << ":";
    for (auto t : neighbors) std::cout << ' ' << candidates.word(t);
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tsetlin Machine text classifier with embedding-boosted bag-of-words"};
    app.require_subcommand(1);

    std::string train_path, test_path, embeddings_path, policy_str = "none";
    std::string model_path, vocab_path, map_path, out_dir, word;
    std::size_t vocab_size = 5000, min_includes = 1;
    int threads = 0;
    TmConfig cfg;
    cfg.clauses_per_class = 100;
    cfg.voting_target = 15;
    cfg.specificity = 3.0;
    cfg.states_per_action = 100;
    cfg.epochs = 10;
    cfg.seed = 42;

    auto* prepare = app.add_subcommand("prepare", "Build vocabulary and expansion-map cache");
    prepare->add_option("--train", train_path, "Training TSV (label<TAB>text)")->required();
    prepare->add_option("--embeddings", embeddings_path, "GloVe-format embedding file");
    prepare->add_option("--policy", policy_str, "none | topk:K | thresh:PHI");
    prepare->add_option("--vocab-size", vocab_size, "Maximum vocabulary size");
    prepare->add_option("--out", out_dir, "Output directory")->required();

    auto* train = app.add_subcommand("train", "Train a model and write per-epoch metrics");
    train->add_option("--train", train_path)->required();
    train->add_option("--test", test_path)->required();
    train->add_option("--embeddings", embeddings_path);
    train->add_option("--policy", policy_str);
    train->add_option("--vocab-size", vocab_size);
    train->add_option("--clauses", cfg.clauses_per_class, "Clauses per class (even)");
    train->add_option("--voting-target", cfg.voting_target);
    train->add_option("--specificity", cfg.specificity);
    train->add_option("--states", cfg.states_per_action, "TA states per action (N)");
    train->add_option("--epochs", cfg.epochs);
    train->add_option("--seed", cfg.seed);
    train->add_flag("--boost-tp", cfg.boost_true_positive, "Certain reinforcement of true-positive literals");
    train->add_option("--threads", threads, "Evaluation worker cap (results unaffected)");
    train->add_option("--out", out_dir)->required();

    auto* eval = app.add_subcommand("eval", "Evaluate a saved model");
    eval->add_option("--model", model_path)->required();
    eval->add_option("--test", test_path)->required();
    eval->add_option("--vocab", vocab_path)->required();
    eval->add_option("--map", map_path)->required();
    eval->add_option("--threads", threads);

    auto* explain = app.add_subcommand("explain", "Dump learned clauses as word conjunctions");
    explain->add_option("--model", model_path)->required();
    explain->add_option("--vocab", vocab_path)->required();
    explain->add_option("--min-includes", min_includes, "Hide clauses with fewer included literals");

    auto* neighbors = app.add_subcommand("neighbors", "List the expansion set for one word");
    neighbors->add_option("--embeddings", embeddings_path)->required();
    neighbors->add_option("--word", word)->required();
    neighbors->add_option("--policy", policy_str);
    neighbors->add_option("--vocab", vocab_path, "Restrict candidates to this vocabulary file");

    try {
        app.parse(argc, argv);
        if (*prepare)
            return run_prepare(train_path, embeddings_path, policy_str, vocab_size, out_dir);
        if (*train)
            return run_train(train_path, test_path, embeddings_path, policy_str, vocab_size, cfg,
                             threads, out_dir);
        if (*eval) return run_eval(model_path, test_path, vocab_path, map_path, threads);
        if (*explain) return run_explain(model_path, vocab_path, min_includes);
        if (*neighbors) return run_neighbors(embeddings_path, word, policy_str, vocab_path);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
