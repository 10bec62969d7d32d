#pragma once

#include "igw/error.hpp"
#include "igw/types.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace igw {

/// Strategy / Norm / Requirement by deontic strength, Restriction for a
/// negated aim.
enum class Category { strategy, norm, requirement, restriction };

const char* to_string(Category category);
std::optional<Category> parse_category(const std::string& text);
inline constexpr Category kAllCategories[] = {Category::strategy, Category::norm,
                                              Category::requirement, Category::restriction};

struct Aim {
    int predicate = 0;
    std::string lemma;
    TokenSpan span;
    std::string text;

    friend bool operator==(const Aim&, const Aim&) = default;
};

/// A constituent drawn from one SRL argument. Discontinuous arguments keep
/// every piece; `text` joins the pieces in token order.
struct Constituent {
    std::vector<TokenSpan> spans;
    std::string text;

    bool overlaps(const Constituent& other) const;
    friend bool operator==(const Constituent&, const Constituent&) = default;
};

struct AbdicoRecord {
    std::string statement_id;
    Aim aim;
    std::optional<Constituent> attribute;
    std::optional<Constituent> object;
    std::optional<std::string> deontic;
    /// Lowercased modal lemma found in the ARGM-MOD span, if any.
    std::optional<std::string> modal;
    bool negated = false;
    Category category = Category::strategy;

    bool deontic_absent() const { return !deontic.has_value(); }
    friend bool operator==(const AbdicoRecord&, const AbdicoRecord&) = default;
};

class NoAimError : public Error {
public:
    explicit NoAimError(const std::string& statement_id)
        : Error(ErrorCode::no_aim, "statement '" + statement_id + "' has no SRL frame to anchor an aim"),
          statement_id_(statement_id) {}

    const std::string& statement_id() const noexcept { return statement_id_; }

private:
    std::string statement_id_;
};

/// Lexicographic key ordering candidate aim frames; larger is more extensive.
struct Extensiveness {
    int distinct_roles = 0;
    int covered_tokens = 0;
    int dependency_children = 0;
    int predicate = 0;  // compared reversed: earlier predicate wins

    friend bool operator<(const Extensiveness& a, const Extensiveness& b);
};

Extensiveness extensiveness(const AnnotatedStatement& statement, const SrlFrame& frame);

/// Index into statement.frames of the frame anchoring the aim.
/// Throws NoAimError when the statement has no frames.
std::size_t select_aim_frame(const AnnotatedStatement& statement);
/// Predicate token index of the aim.
int select_aim(const AnnotatedStatement& statement);

std::optional<Constituent> extract_attribute(const AnnotatedStatement& statement, const SrlFrame& aim_frame);
std::optional<Constituent> extract_object(const AnnotatedStatement& statement, const SrlFrame& aim_frame,
                                          const std::optional<Constituent>& attribute);
std::optional<std::string> extract_deontic(const AnnotatedStatement& statement, const SrlFrame& aim_frame);

bool is_negation_word(const std::string& word);
/// Decision table over (negated, modal lemma). Total: unknown or absent
/// modals fall to Strategy.
Category classify_snr(bool negated, const std::optional<std::string>& modal_lemma);
Category classify_snr(const AbdicoRecord& record);

AbdicoRecord parse_statement(const AnnotatedStatement& statement);

struct ParseOutcome {
    std::vector<AbdicoRecord> records;
    std::vector<std::string> unparsed;  // statement ids that raised NoAim
};

/// Parses every statement. With keep_unparsed == false the first NoAim is rethrown.
ParseOutcome parse_corpus(const Corpus& corpus, bool keep_unparsed);

nlohmann::json to_json(const AbdicoRecord& record);
AbdicoRecord record_from_json(const nlohmann::json& j);

}  // namespace igw
