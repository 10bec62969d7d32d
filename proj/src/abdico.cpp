#include "igw/abdico.hpp"

#include "igw/text.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace igw {

const char* to_string(Category category) {
    switch (category) {
        case Category::strategy: return "Strategy";
        case Category::norm: return "Norm";
        case Category::requirement: return "Requirement";
        case Category::restriction: return "Restriction";
    }
    return "Strategy";
}

std::optional<Category> parse_category(const std::string& text) {
    for (Category c : kAllCategories) {
        if (text == to_string(c)) return c;
    }
    return std::nullopt;
}

bool Constituent::overlaps(const Constituent& other) const {
    for (const auto& a : spans) {
        for (const auto& b : other.spans) {
            if (a.overlaps(b)) return true;
        }
    }
    return false;
}

bool operator<(const Extensiveness& a, const Extensiveness& b) {
    return std::tie(a.distinct_roles, a.covered_tokens, a.dependency_children, b.predicate) <
           std::tie(b.distinct_roles, b.covered_tokens, b.dependency_children, a.predicate);
}

Extensiveness extensiveness(const AnnotatedStatement& statement, const SrlFrame& frame) {
    std::set<std::string> labels;
    std::set<int> covered;
    for (const auto& role : frame.roles) {
        labels.insert(role.label);
        for (int i = role.span.start; i < role.span.end; ++i) covered.insert(i);
    }
    const int children = static_cast<int>(std::count_if(statement.tokens.begin(), statement.tokens.end(),
                                                         [&](const Token& t) { return t.head == frame.predicate; }));
    return {static_cast<int>(labels.size()), static_cast<int>(covered.size()), children, frame.predicate};
}

std::size_t select_aim_frame(const AnnotatedStatement& statement) {
    if (statement.frames.empty()) throw NoAimError(statement.id);

    std::vector<std::size_t> candidates;
    if (auto root = statement.root(); root && *root >= 0 && *root < statement.token_count() &&
                                      statement.tokens[static_cast<std::size_t>(*root)].pos == PartOfSpeech::verb) {
        for (std::size_t f = 0; f < statement.frames.size(); ++f) {
            if (statement.frames[f].predicate == *root) candidates.push_back(f);
        }
    }
    if (candidates.empty()) {
        for (std::size_t f = 0; f < statement.frames.size(); ++f) candidates.push_back(f);
    }

    std::size_t best = candidates.front();
    Extensiveness best_key = extensiveness(statement, statement.frames[best]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const auto key = extensiveness(statement, statement.frames[candidates[i]]);
        if (best_key < key) {
            best = candidates[i];
            best_key = key;
        }
    }
    return best;
}

int select_aim(const AnnotatedStatement& statement) {
    return statement.frames[select_aim_frame(statement)].predicate;
}

namespace {

std::optional<Constituent> constituent(const AnnotatedStatement& statement, std::vector<TokenSpan> spans) {
    if (spans.empty()) return std::nullopt;
    std::sort(spans.begin(), spans.end());
    Constituent c;
    for (const auto& span : spans) {
        const std::string piece = statement.span_text(span);
        if (!piece.empty()) {
            if (!c.text.empty()) c.text += ' ';
            c.text += piece;
        }
    }
    c.spans = std::move(spans);
    return c;
}

bool is_active_nominal_subject(const std::string& deprel) {
    if (deprel == "nsubj") return true;
    return deprel.starts_with("nsubj:") && deprel != "nsubj:pass";
}

const std::set<std::string>& known_modals() {
    static const std::set<std::string> modals = {"must",  "shall", "should", "ought", "may",
                                                 "can",   "might", "could",  "will",  "would"};
    return modals;
}

std::optional<std::string> modal_lemma(const AnnotatedStatement& statement, const SrlFrame& frame) {
    std::optional<std::string> first;
    for (const auto& span : frame.spans_for(kModalRole)) {
        for (int i = span.start; i < span.end; ++i) {
            const auto lemma = text::to_lower(statement.tokens[static_cast<std::size_t>(i)].lemma);
            if (known_modals().count(lemma)) return lemma;
            if (!first && !lemma.empty() && !is_negation_word(lemma)) first = lemma;
        }
    }
    return first;
}

}  // namespace

std::optional<Constituent> extract_attribute(const AnnotatedStatement& statement, const SrlFrame& aim_frame) {
    if (auto agent = aim_frame.spans_for("ARG0"); !agent.empty()) return constituent(statement, std::move(agent));
    const bool nominal_subject = std::any_of(statement.tokens.begin(), statement.tokens.end(), [&](const Token& t) {
        return t.head == aim_frame.predicate && is_active_nominal_subject(t.deprel);
    });
    if (nominal_subject) return constituent(statement, aim_frame.spans_for("ARG1"));
    return std::nullopt;
}

std::optional<Constituent> extract_object(const AnnotatedStatement& statement, const SrlFrame& aim_frame,
                                          const std::optional<Constituent>& attribute) {
    for (int rank = 1; rank <= 5; ++rank) {
        auto candidate = constituent(statement, aim_frame.spans_for("ARG" + std::to_string(rank)));
        if (!candidate) continue;
        if (attribute && candidate->overlaps(*attribute)) continue;
        return candidate;
    }
    return std::nullopt;
}

std::optional<std::string> extract_deontic(const AnnotatedStatement& statement, const SrlFrame& aim_frame) {
    std::set<int> indices;
    for (const auto& role : aim_frame.roles) {
        if (role.label != kModalRole && role.label != kNegationRole) continue;
        for (int i = role.span.start; i < role.span.end; ++i) indices.insert(i);
    }
    if (indices.empty()) return std::nullopt;
    std::string out;
    for (int i : indices) {
        const auto& t = statement.tokens[static_cast<std::size_t>(i)].text;
        if (t.empty()) continue;
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

bool is_negation_word(const std::string& word) {
    const std::string w = text::to_lower(word);
    return w == "not" || w == "n't" || w == "never" || w == "cannot" || (w.size() > 3 && w.ends_with("n't"));
}

Category classify_snr(bool negated, const std::optional<std::string>& modal) {
    if (negated) return Category::restriction;
    if (!modal) return Category::strategy;
    const std::string m = text::to_lower(*modal);
    if (m == "must" || m == "shall") return Category::requirement;
    if (m == "should" || m == "ought") return Category::norm;
    return Category::strategy;
}

Category classify_snr(const AbdicoRecord& record) { return classify_snr(record.negated, record.modal); }

AbdicoRecord parse_statement(const AnnotatedStatement& statement) {
    const SrlFrame& frame = statement.frames[select_aim_frame(statement)];
    const Token& predicate = statement.tokens.at(static_cast<std::size_t>(frame.predicate));

    AbdicoRecord record;
    record.statement_id = statement.id;
    record.aim = {frame.predicate, predicate.lemma, {frame.predicate, frame.predicate + 1}, predicate.text};
    record.attribute = extract_attribute(statement, frame);
    record.object = extract_object(statement, frame, record.attribute);
    record.deontic = extract_deontic(statement, frame);
    record.modal = modal_lemma(statement, frame);

    bool negated = frame.has_role(kNegationRole);
    if (!negated && record.deontic) {
        for (const auto& word : text::split_whitespace(*record.deontic)) negated = negated || is_negation_word(word);
    }
    record.negated = negated;
    record.category = classify_snr(record);
    return record;
}

ParseOutcome parse_corpus(const Corpus& corpus, bool keep_unparsed) {
    ParseOutcome out;
    for (const auto& statement : corpus.statements) {
        try {
            out.records.push_back(parse_statement(statement));
        } catch (const NoAimError&) {
            if (!keep_unparsed) throw;
            out.unparsed.push_back(statement.id);
        }
    }
    return out;
}

namespace {

nlohmann::json constituent_json(const std::optional<Constituent>& c) {
    if (!c) return nullptr;
    nlohmann::json spans = nlohmann::json::array();
    for (const auto& s : c->spans) spans.push_back({s.start, s.end});
    return {{"spans", std::move(spans)}, {"text", c->text}};
}

std::optional<Constituent> constituent_from_json(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    Constituent c;
    for (const auto& s : j.at("spans")) c.spans.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
    c.text = j.at("text").get<std::string>();
    return c;
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const AbdicoRecord& r) {
    return {{"aim",
             {{"index", r.aim.predicate},
              {"lemma", r.aim.lemma},
              {"span", {r.aim.span.start, r.aim.span.end}},
              {"text", r.aim.text}}},
            {"attribute", constituent_json(r.attribute)},
            {"category", to_string(r.category)},
            {"deontic", optional_json(r.deontic)},
            {"deontic_absent", r.deontic_absent()},
            {"modal", optional_json(r.modal)},
            {"negated", r.negated},
            {"object", constituent_json(r.object)},
            {"statement_id", r.statement_id}};
}

AbdicoRecord record_from_json(const nlohmann::json& j) {
    AbdicoRecord r;
    r.statement_id = j.at("statement_id").get<std::string>();
    const auto& aim = j.at("aim");
    r.aim.predicate = aim.at("index").get<int>();
    r.aim.lemma = aim.at("lemma").get<std::string>();
    r.aim.span = {aim.at("span").at(0).get<int>(), aim.at("span").at(1).get<int>()};
    r.aim.text = aim.at("text").get<std::string>();
    r.attribute = constituent_from_json(j.at("attribute"));
    r.object = constituent_from_json(j.at("object"));
    if (!j.at("deontic").is_null()) r.deontic = j.at("deontic").get<std::string>();
    if (auto it = j.find("modal"); it != j.end() && !it->is_null()) r.modal = it->get<std::string>();
    r.negated = j.at("negated").get<bool>();
    const auto category = j.at("category").get<std::string>();
    auto parsed = parse_category(category);
    if (!parsed) throw Error(ErrorCode::malformed_record, "unknown category '" + category + "'");
    r.category = *parsed;
    return r;
}

}  // namespace igw
