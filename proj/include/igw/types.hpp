#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace igw {

/// Half-open token range [start, end) within one statement.
struct TokenSpan {
    int start = 0;
    int end = 0;

    int size() const { return end - start; }
    bool empty() const { return end <= start; }
    bool contains(int index) const { return index >= start && index < end; }
    bool overlaps(const TokenSpan& other) const {
        return start < other.end && other.start < end;
    }

    friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
    friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;
};

enum class PartOfSpeech { verb, noun, other };

const char* to_string(PartOfSpeech pos);
std::optional<PartOfSpeech> parse_part_of_speech(const std::string& text);

struct Token {
    int index = 0;
    std::string text;
    std::string lemma;
    PartOfSpeech pos = PartOfSpeech::other;
    int head = -1;  // -1 marks the dependency root
    std::string deprel;
    bool is_stopword = false;

    friend bool operator==(const Token&, const Token&) = default;
};

struct SemanticRole {
    std::string label;  // ARG0..ARG5, ARGM-MOD, ARGM-NEG, ARGM-*
    TokenSpan span;

    friend bool operator==(const SemanticRole&, const SemanticRole&) = default;
};

/// Returns 0..5 for ARG0..ARG5, nothing for modifiers.
std::optional<int> core_argument_rank(const std::string& label);
bool is_valid_role_label(const std::string& label);

inline constexpr const char* kModalRole = "ARGM-MOD";
inline constexpr const char* kNegationRole = "ARGM-NEG";

struct SrlFrame {
    int predicate = 0;
    std::vector<SemanticRole> roles;

    /// All spans carrying `label`, in token order. Discontinuous arguments
    /// appear as several spans with the same label.
    std::vector<TokenSpan> spans_for(const std::string& label) const;
    bool has_role(const std::string& label) const;

    friend bool operator==(const SrlFrame&, const SrlFrame&) = default;
};

struct AnnotatedStatement {
    std::string id;
    std::vector<Token> tokens;
    std::vector<SrlFrame> frames;
    std::optional<std::string> source_doc;

    int token_count() const { return static_cast<int>(tokens.size()); }
    /// Index of the first token whose head is -1.
    std::optional<int> root() const;
    /// Surface text of the tokens, in order, joined by single spaces.
    std::string span_text(const TokenSpan& span) const;
    /// Detokenized text of the whole statement.
    std::string text() const;

    friend bool operator==(const AnnotatedStatement&, const AnnotatedStatement&) = default;
};

struct PolicyDoc {
    std::string id;
    std::string text;
    std::map<std::string, std::string> metadata;
    std::optional<Eigen::VectorXd> embedding;

    friend bool operator==(const PolicyDoc& a, const PolicyDoc& b);
};

struct Mention {
    std::string statement_id;
    TokenSpan span;
    bool pronominal = false;

    friend bool operator==(const Mention&, const Mention&) = default;
};

struct CorefChain {
    std::vector<Mention> mentions;

    friend bool operator==(const CorefChain&, const CorefChain&) = default;
};

struct Corpus {
    std::string name;
    std::vector<PolicyDoc> docs;
    std::vector<AnnotatedStatement> statements;
    std::vector<CorefChain> coref_chains;
    std::optional<int> embedding_dim;

    const PolicyDoc* find_doc(const std::string& id) const;
    const AnnotatedStatement* find_statement(const std::string& id) const;

    friend bool operator==(const Corpus&, const Corpus&) = default;
};

}  // namespace igw
