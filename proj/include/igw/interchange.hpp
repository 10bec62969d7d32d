#pragma once

#include "igw/error.hpp"
#include "igw/types.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace igw {

/// One broken invariant. `id` names the offending record, `rule` the invariant.
struct Violation {
    std::string id;
    std::string field;
    std::string rule;

    friend bool operator==(const Violation&, const Violation&) = default;
};

namespace rules {
inline constexpr const char* kHeadRange = "head range";
inline constexpr const char* kSingleRoot = "single root";
inline constexpr const char* kContiguousIndex = "contiguous index";
inline constexpr const char* kPredicateRange = "predicate range";
inline constexpr const char* kSpanRange = "span range";
inline constexpr const char* kUniqueCoreArgument = "unique core argument";
inline constexpr const char* kRoleLabel = "role label";
inline constexpr const char* kUniqueStatementId = "unique statement id";
inline constexpr const char* kUniqueDocId = "unique doc id";
inline constexpr const char* kEmbeddingDimension = "embedding dimension";
inline constexpr const char* kPositiveDimension = "positive dimension";
inline constexpr const char* kChainLength = "chain length";
inline constexpr const char* kMentionSpan = "mention span";
}  // namespace rules

/// Raised by load_corpus / corpus_from_json; carries every violation found.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

std::vector<Violation> validate(const Corpus& corpus);
/// Token and frame invariants of a single statement.
std::vector<Violation> validate_statement(const AnnotatedStatement& statement);

/// Reads a corpus directory. Throws Error(io_error) for missing files,
/// Error(malformed_record) with line number and record id for bad lines, and
/// Error(validation_failed) naming the offending ids when invariants fail.
Corpus load_corpus(const std::filesystem::path& dir);

/// Writes the canonical serialization; throws Error(io_error) if unwritable.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);

/// Builds a corpus from an in-memory document with keys
/// name, embedding_dim, docs, statements, chains. Validates like load_corpus.
Corpus corpus_from_json(const nlohmann::json& payload);
nlohmann::json corpus_to_json(const Corpus& corpus);

std::string format_violations(const std::vector<Violation>& violations, std::size_t limit = 10);

void to_json(nlohmann::json& j, const Violation& v);

namespace interchange {

inline constexpr const char* kMetaFile = "corpus.meta";
inline constexpr const char* kDocsFile = "docs.jsonl";
inline constexpr const char* kStatementsFile = "statements.jsonl";
inline constexpr const char* kChainsFile = "chains.jsonl";

nlohmann::json to_json(const Token& token);
nlohmann::json to_json(const SrlFrame& frame);
nlohmann::json to_json(const AnnotatedStatement& statement);
nlohmann::json to_json(const PolicyDoc& doc);
nlohmann::json to_json(const CorefChain& chain);

AnnotatedStatement statement_from_json(const nlohmann::json& j);
PolicyDoc doc_from_json(const nlohmann::json& j);
CorefChain chain_from_json(const nlohmann::json& j);

/// Compact dump with sorted keys and shortest round-trip decimals.
std::string canonical(const nlohmann::json& j);

/// Calls `on_record(json, line_number)` for every non-blank line.
/// Parse errors throw Error(malformed_record) with the line number.
void read_jsonl(const std::filesystem::path& path,
                const std::function<void(const nlohmann::json&, int)>& on_record);

/// Writes one canonical record per line. Throws Error(io_error).
void write_jsonl(const std::filesystem::path& path, const std::vector<nlohmann::json>& records);
void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

}  // namespace interchange
}  // namespace igw
