#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* b = std::getenv("TMBOOST_BIN");
    REQUIRE_MESSAGE(b != nullptr, "TMBOOST_BIN must point at the tmboost binary");
    return b;
}

int run(const std::string& args, const fs::path& stdout_file = {}) {
    std::string cmd = bin() + " " + args;
    if (!stdout_file.empty()) cmd += " > " + stdout_file.string();
    cmd += " 2> /dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

// CSV with the wall-clock column blanked, for byte comparisons.
std::string strip_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        auto last = line.rfind(',');
        if (last != std::string::npos && line.find("epoch") != 0)
            line = line.substr(0, last);
        out << line << "\n";
    }
    return out.str();
}

struct Fixture {
    fs::path dir;

    Fixture() {
        dir = fs::temp_directory_path() /
              ("tmboost_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::create_directories(dir);
        write(dir / "train.tsv",
              "pos\tgood movie\n"
              "neg\tbad movie\n"
              "pos\tgood film\n"
              "neg\tbad film\n"
              "pos\tvery good movie indeed\n"
              "neg\tvery bad film indeed\n");
        write(dir / "test.tsv",
              "pos\tgood movie\n"
              "neg\tbad film\n");
        write(dir / "glove.txt",
              "good 1.0 0.0\n"
              "great 0.98 0.2\n"
              "bad -1.0 0.05\n"
              "awful -0.97 0.2\n"
              "movie 0.0 1.0\n"
              "film 0.05 1.0\n");
    }
    ~Fixture() { fs::remove_all(dir); }

    static int& counter() {
        static int c = 0;
        return c;
    }
};

const std::string kTrainFlags =
    " --clauses 10 --voting-target 5 --specificity 3 --epochs 3 --seed 7 --vocab-size 20";

} // namespace

TEST_CASE("cli: prepare writes vocabulary and expansion map") {
    Fixture f;
    auto out = (f.dir / "prep").string();
    int rc = run("prepare --train " + (f.dir / "train.tsv").string() + " --embeddings " +
                     (f.dir / "glove.txt").string() + " --policy topk:2 --vocab-size 20 --out " +
                     out,
                 f.dir / "prep.log");
    CHECK(rc == 0);
    CHECK(fs::exists(fs::path(out) / "vocab.txt"));
    std::string map = slurp(fs::path(out) / "expansion.map");
    CHECK(map.find("policy=topk:2") == 0);
    CHECK(map.find("vocab_hash=") != std::string::npos);
}

TEST_CASE("cli: policy without embeddings is a config error") {
    Fixture f;
    int rc = run("prepare --train " + (f.dir / "train.tsv").string() +
                 " --policy thresh:0.7 --out " + (f.dir / "prep").string());
    CHECK(rc == 1);
}

TEST_CASE("cli: malformed data yields exit code 2") {
    Fixture f;
    write(f.dir / "bad.tsv", "no tab at all\n");
    int rc = run("prepare --train " + (f.dir / "bad.tsv").string() + " --out " +
                 (f.dir / "prep").string());
    CHECK(rc == 2);
}

TEST_CASE("cli: train twice with one seed gives identical artifacts") {
    Fixture f;
    for (const char* out : {"run1", "run2"}) {
        int rc = run("train --train " + (f.dir / "train.tsv").string() + " --test " +
                         (f.dir / "test.tsv").string() + kTrainFlags + " --out " +
                         (f.dir / out).string(),
                     f.dir / "train.log");
        REQUIRE(rc == 0);
    }
    CHECK(slurp(f.dir / "run1/model.txt") == slurp(f.dir / "run2/model.txt"));
    CHECK(strip_timing(slurp(f.dir / "run1/metrics.csv")) ==
          strip_timing(slurp(f.dir / "run2/metrics.csv")));

    std::string csv = slurp(f.dir / "run1/metrics.csv");
    CHECK(csv.find("epoch,train_acc,test_acc,seconds") == 0);
    CHECK(csv.find("last50_mean") == std::string::npos);  // only 3 epochs
}

TEST_CASE("cli: eval, explain, neighbors round trip") {
    Fixture f;
    auto out = (f.dir / "run").string();
    REQUIRE(run("train --train " + (f.dir / "train.tsv").string() + " --test " +
                    (f.dir / "test.tsv").string() + " --embeddings " +
                    (f.dir / "glove.txt").string() + " --policy topk:1" + kTrainFlags +
                    " --out " + out,
                f.dir / "t.log") == 0);

    int rc = run("eval --model " + out + "/model.txt --test " + (f.dir / "test.tsv").string() +
                     " --vocab " + out + "/vocab.txt --map " + out + "/expansion.map",
                 f.dir / "eval.out");
    CHECK(rc == 0);
    std::string eval_out = slurp(f.dir / "eval.out");
    CHECK(eval_out.find("accuracy=") == 0);
    CHECK(eval_out.find("recall=") != std::string::npos);

    rc = run("explain --model " + out + "/model.txt --vocab " + out +
                 "/vocab.txt --min-includes 0",
             f.dir / "explain.out");
    CHECK(rc == 0);
    CHECK(slurp(f.dir / "explain.out").find("class=0 i=0 pol=+") != std::string::npos);

    rc = run("neighbors --embeddings " + (f.dir / "glove.txt").string() +
                 " --word good --policy topk:2",
             f.dir / "nb.out");
    CHECK(rc == 0);
    CHECK(slurp(f.dir / "nb.out").find("good: good great") == 0);

    rc = run("neighbors --embeddings " + (f.dir / "glove.txt").string() +
                 " --word zebra --policy topk:2",
             f.dir / "oov.out");
    CHECK(rc == 0);
    CHECK(slurp(f.dir / "oov.out") == "zebra: OOV\n");
}

TEST_CASE("cli: vocab hash mismatch between model artifacts is a hard error") {
    Fixture f;
    auto out = (f.dir / "run").string();
    REQUIRE(run("train --train " + (f.dir / "train.tsv").string() + " --test " +
                    (f.dir / "test.tsv").string() + kTrainFlags + " --out " + out,
                f.dir / "t.log") == 0);

    // Tamper with the vocabulary so the map's hash no longer matches.
    std::string vocab = slurp(fs::path(out) / "vocab.txt");
    write(fs::path(out) / "vocab.txt", "zzz\n" + vocab.substr(vocab.find('\n') + 1));
    int rc = run("eval --model " + out + "/model.txt --test " + (f.dir / "test.tsv").string() +
                 " --vocab " + out + "/vocab.txt --map " + out + "/expansion.map");
    CHECK(rc == 2);
}

TEST_CASE("cli: explain on a fresh model with min-includes 1 is empty") {
    Fixture f;
    auto out = (f.dir / "run").string();
    std::string zero_epochs =
        " --clauses 10 --voting-target 5 --specificity 3 --epochs 0 --seed 7 --vocab-size 20";
    REQUIRE(run("train --train " + (f.dir / "train.tsv").string() + " --test " +
                    (f.dir / "test.tsv").string() + zero_epochs + " --out " + out,
                f.dir / "t.log") == 0);
    int rc = run("explain --model " + out + "/model.txt --vocab " + out +
                     "/vocab.txt --min-includes 1",
                 f.dir / "explain.out");
    CHECK(rc == 0);
    CHECK(slurp(f.dir / "explain.out").empty());
}
