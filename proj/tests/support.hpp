#pragma once

#include "igw/abdico.hpp"
#include "igw/interchange.hpp"
#include "igw/types.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <initializer_list>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace igw::test {

inline std::filesystem::path fixture_dir() { return IGW_FIXTURE_DIR; }
inline std::filesystem::path sample_dir() { return fixture_dir() / "sample"; }

inline std::vector<AbdicoRecord> expected_sample_records() {
    std::vector<AbdicoRecord> out;
    interchange::read_jsonl(fixture_dir() / "sample_records.jsonl",
                            [&](const nlohmann::json& j, int) { out.push_back(record_from_json(j)); });
    return out;
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() / ("igw-test-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

private:
    std::filesystem::path path_;
};

struct TokenSpec {
    std::string text;
    std::string lemma;
    PartOfSpeech pos;
    int head;
    std::string deprel;
};

using RoleSpec = std::tuple<std::string, int, int>;

inline AnnotatedStatement make_statement(std::string id, std::vector<TokenSpec> tokens,
                                         std::vector<std::pair<int, std::vector<RoleSpec>>> frames) {
    AnnotatedStatement s;
    s.id = std::move(id);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto& t = tokens[i];
        s.tokens.push_back({static_cast<int>(i), t.text, t.lemma, t.pos, t.head, t.deprel, false});
    }
    for (auto& [predicate, roles] : frames) {
        SrlFrame f;
        f.predicate = predicate;
        for (auto& [label, start, end] : roles) f.roles.push_back({label, {start, end}});
        s.frames.push_back(std::move(f));
    }
    return s;
}

inline constexpr auto V = PartOfSpeech::verb;
inline constexpr auto N = PartOfSpeech::noun;
inline constexpr auto O = PartOfSpeech::other;

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd v(dim);
    do {
        for (int i = 0; i < dim; ++i) v(i) = normal(rng);
    } while (v.norm() < 1e-6);
    return v;
}

/// Embedded corpus with ids "<prefix>00".. and random vectors.
inline Corpus random_corpus(std::mt19937_64& rng, const std::string& prefix, int docs, int dim) {
    Corpus c;
    c.name = prefix;
    c.embedding_dim = dim;
    for (int i = 0; i < docs; ++i) {
        PolicyDoc d;
        d.id = prefix + (i < 10 ? "0" : "") + std::to_string(i);
        d.text = "doc " + d.id;
        d.embedding = random_vector(rng, dim);
        c.docs.push_back(std::move(d));
    }
    return c;
}

/// A random statement satisfying every token and frame invariant.
inline AnnotatedStatement random_statement(std::mt19937_64& rng, const std::string& id) {
    static const std::vector<std::string> words = {"members", "must", "submit", "the", "report", "board",
                                                   "shall",   "not",  "vote",   "on",  "releases"};
    static const std::vector<std::string> labels = {"ARG0", "ARG1", "ARG2", "ARG3", "ARGM-MOD",
                                                    "ARGM-NEG", "ARGM-TMP"};
    std::uniform_int_distribution<int> len(1, 12);
    const int n = len(rng);
    AnnotatedStatement s;
    s.id = id;
    const int root = std::uniform_int_distribution<int>(0, n - 1)(rng);
    for (int i = 0; i < n; ++i) {
        Token t;
        t.index = i;
        t.text = words[rng() % words.size()];
        t.lemma = t.text;
        t.pos = static_cast<PartOfSpeech>(rng() % 3);
        t.head = i == root ? -1 : root;
        t.deprel = i == root ? "root" : (rng() % 2 ? "nsubj" : "obj");
        t.is_stopword = rng() % 2;
        s.tokens.push_back(std::move(t));
    }
    const int frames = static_cast<int>(rng() % 3);
    for (int f = 0; f < frames; ++f) {
        SrlFrame frame;
        frame.predicate = static_cast<int>(rng() % n);
        std::vector<bool> used(labels.size(), false);
        const int roles = static_cast<int>(rng() % 4);
        for (int r = 0; r < roles; ++r) {
            const std::size_t l = rng() % labels.size();
            if (used[l]) continue;
            used[l] = true;
            const int start = static_cast<int>(rng() % n);
            const int end = start + 1 + static_cast<int>(rng() % (n - start));
            frame.roles.push_back({labels[l], {start, end}});
        }
        s.frames.push_back(std::move(frame));
    }
    return s;
}

inline Corpus random_valid_corpus(std::mt19937_64& rng, const std::string& name) {
    Corpus c;
    c.name = name;
    const int dim = 1 + static_cast<int>(rng() % 5);
    c.embedding_dim = rng() % 4 ? std::optional<int>(dim) : std::nullopt;
    const int docs = static_cast<int>(rng() % 5);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int i = 0; i < docs; ++i) {
        PolicyDoc d;
        d.id = "d" + std::to_string(i);
        d.text = "text \"" + std::to_string(i) + "\" \xC3\xA9";
        if (rng() % 2) d.metadata["k" + std::to_string(i)] = "v";
        if (c.embedding_dim && rng() % 2) {
            Eigen::VectorXd v(dim);
            for (int k = 0; k < dim; ++k) v(k) = unif(rng);
            d.embedding = v;
        }
        c.docs.push_back(std::move(d));
    }
    const int statements = static_cast<int>(rng() % 6);
    for (int i = 0; i < statements; ++i) {
        auto s = random_statement(rng, "s" + std::to_string(i));
        if (docs && rng() % 2) s.source_doc = "d" + std::to_string(rng() % docs);
        c.statements.push_back(std::move(s));
    }
    if (statements >= 1 && rng() % 2) {
        CorefChain chain;
        for (int m = 0; m < 2 + static_cast<int>(rng() % 2); ++m) {
            const auto& s = c.statements[rng() % c.statements.size()];
            const int start = static_cast<int>(rng() % s.tokens.size());
            chain.mentions.push_back({s.id, {start, start + 1}, static_cast<bool>(rng() % 2)});
        }
        c.coref_chains.push_back(std::move(chain));
    }
    return c;
}

}  // namespace igw::test
