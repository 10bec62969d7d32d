#include "igw/types.hpp"

#include "igw/error.hpp"
#include "igw/text.hpp"

#include <algorithm>

namespace igw {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::not_found: return "not_found";
        case ErrorCode::conflict: return "conflict";
        case ErrorCode::failed_precondition: return "failed_precondition";
        case ErrorCode::validation_failed: return "validation_failed";
        case ErrorCode::io_error: return "io_error";
        case ErrorCode::malformed_record: return "malformed_record";
        case ErrorCode::no_aim: return "no_aim";
        case ErrorCode::upstream_error: return "upstream_error";
    }
    return "unknown";
}

const char* to_string(PartOfSpeech pos) {
    switch (pos) {
        case PartOfSpeech::verb: return "verb";
        case PartOfSpeech::noun: return "noun";
        case PartOfSpeech::other: return "other";
    }
    return "other";
}

std::optional<PartOfSpeech> parse_part_of_speech(const std::string& text) {
    if (text == "verb") return PartOfSpeech::verb;
    if (text == "noun") return PartOfSpeech::noun;
    if (text == "other") return PartOfSpeech::other;
    return std::nullopt;
}

std::optional<int> core_argument_rank(const std::string& label) {
    if (label.size() == 4 && label.starts_with("ARG") && label[3] >= '0' && label[3] <= '5') {
        return label[3] - '0';
    }
    return std::nullopt;
}

bool is_valid_role_label(const std::string& label) {
    if (core_argument_rank(label)) return true;
    return label.size() > 5 && label.starts_with("ARGM-");
}

std::vector<TokenSpan> SrlFrame::spans_for(const std::string& label) const {
    std::vector<TokenSpan> out;
    for (const auto& role : roles) {
        if (role.label == label) out.push_back(role.span);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool SrlFrame::has_role(const std::string& label) const {
    return std::any_of(roles.begin(), roles.end(), [&](const SemanticRole& r) { return r.label == label; });
}

std::optional<int> AnnotatedStatement::root() const {
    for (const auto& t : tokens) {
        if (t.head == -1) return t.index;
    }
    return std::nullopt;
}

std::string AnnotatedStatement::span_text(const TokenSpan& span) const {
    std::string out;
    for (int i = std::max(span.start, 0); i < std::min(span.end, token_count()); ++i) {
        const auto& t = tokens[static_cast<std::size_t>(i)].text;
        if (t.empty()) continue;
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

std::string AnnotatedStatement::text() const {
    std::vector<std::string> words;
    words.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!t.text.empty()) words.push_back(t.text);
    }
    return text::detokenize(words);
}

bool operator==(const PolicyDoc& a, const PolicyDoc& b) {
    if (a.id != b.id || a.text != b.text || a.metadata != b.metadata) return false;
    if (a.embedding.has_value() != b.embedding.has_value()) return false;
    if (!a.embedding) return true;
    return a.embedding->size() == b.embedding->size() && *a.embedding == *b.embedding;
}

const PolicyDoc* Corpus::find_doc(const std::string& id) const {
    auto it = std::find_if(docs.begin(), docs.end(), [&](const PolicyDoc& d) { return d.id == id; });
    return it == docs.end() ? nullptr : &*it;
}

const AnnotatedStatement* Corpus::find_statement(const std::string& id) const {
    auto it = std::find_if(statements.begin(), statements.end(),
                           [&](const AnnotatedStatement& s) { return s.id == id; });
    return it == statements.end() ? nullptr : &*it;
}

}  // namespace igw
