#pragma once

#include "igw/abdico.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace igw {

enum class ConstituentKind { attribute, object, aim, deontic };
inline constexpr std::array<ConstituentKind, 4> kConstituentKinds = {
    ConstituentKind::attribute, ConstituentKind::object, ConstituentKind::aim, ConstituentKind::deontic};

const char* to_string(ConstituentKind kind);

using TokenSet = std::set<std::string>;

struct GoldConstituent {
    std::vector<std::string> tokens;
    bool implicit = false;

    friend bool operator==(const GoldConstituent&, const GoldConstituent&) = default;
};

struct GoldAnnotation {
    std::string statement_id;
    bool coded = true;
    std::array<GoldConstituent, 4> constituents;  // indexed by ConstituentKind

    const GoldConstituent& operator[](ConstituentKind kind) const {
        return constituents[static_cast<std::size_t>(kind)];
    }
    GoldConstituent& operator[](ConstituentKind kind) { return constituents[static_cast<std::size_t>(kind)]; }
};

/// Lowercase, strip punctuation, drop stopwords, lemmatize aim tokens.
TokenSet normalize(const std::vector<std::string>& tokens, ConstituentKind kind);

/// Predicted token list of one constituent of a record (empty when absent).
std::vector<std::string> predicted_tokens(const AbdicoRecord& record, ConstituentKind kind);

enum class Averaging { micro, macro };

struct ConstituentScore {
    bool available = false;  // false: no evaluable instance (reported n/a)
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t statements = 0;
};

double f1_score(double precision, double recall);

/// One evaluable instance: normalized predicted and gold sets.
struct ScoredPair {
    TokenSet predicted;
    TokenSet gold;
};

ConstituentScore score_constituent(const std::vector<ScoredPair>& pairs, Averaging averaging = Averaging::micro);

struct EvalReport {
    std::string dataset;
    Averaging averaging = Averaging::micro;
    std::array<ConstituentScore, 4> scores;
    std::size_t evaluated_statements = 0;
    std::vector<std::string> missing_records;  // coded gold without a record
    std::vector<std::string> missing_gold;     // records without gold
    std::string stopword_version;
    std::string stopword_hash;

    const ConstituentScore& operator[](ConstituentKind kind) const {
        return scores[static_cast<std::size_t>(kind)];
    }
};

EvalReport evaluate(const std::vector<AbdicoRecord>& records, const std::vector<GoldAnnotation>& gold,
                    const std::string& dataset, Averaging averaging = Averaging::micro);

nlohmann::json to_json(const EvalReport& report);
nlohmann::json to_json(const GoldAnnotation& gold);
GoldAnnotation gold_from_json(const nlohmann::json& j);

}  // namespace igw
