#pragma once

#include "igw/types.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace igw {

enum class RepresentativeStrategy {
    first_named,    // first non-pronominal mention in chain order
    longest_named,  // longest non-pronominal mention, earliest on ties
};

/// Index into chain.mentions of the named entity the chain refers to, or
/// nothing when every mention is pronominal.
std::optional<std::size_t> representative_mention(
    const CorefChain& chain,
    RepresentativeStrategy strategy = RepresentativeStrategy::first_named);

struct Substitution {
    std::string statement_id;
    TokenSpan original;
    std::string replacement;
    std::size_t chain = 0;

    friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct ResolvedStatement {
    std::string statement_id;
    std::string text;
    std::vector<Substitution> substitutions;

    friend bool operator==(const ResolvedStatement&, const ResolvedStatement&) = default;
};

/// Statements grouped by their source document, in corpus order.
/// Statements without a source document form a group with an empty doc id.
struct ResolvedDocument {
    std::string doc_id;
    std::vector<ResolvedStatement> statements;

    std::string text() const;
    std::size_t substitution_count() const;
};

std::vector<ResolvedDocument> resolve(
    const Corpus& corpus,
    RepresentativeStrategy strategy = RepresentativeStrategy::first_named);

/// Pure-core mode: keeps the original annotations but writes each
/// substitution's replacement into the surface text of its span (first token
/// carries the replacement, the rest are blanked).
Corpus apply_substitutions(const Corpus& corpus, const std::vector<ResolvedDocument>& resolved);

nlohmann::json to_json(const ResolvedStatement& statement);

}  // namespace igw
