#include "igw/coref.hpp"

#include "igw/text.hpp"

#include <algorithm>
#include <map>

namespace igw {

std::optional<std::size_t> representative_mention(const CorefChain& chain, RepresentativeStrategy strategy) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < chain.mentions.size(); ++i) {
        const auto& m = chain.mentions[i];
        if (m.pronominal) continue;
        if (strategy == RepresentativeStrategy::first_named) return i;
        if (!best || m.span.size() > chain.mentions[*best].span.size()) best = i;
    }
    return best;
}

std::string ResolvedDocument::text() const {
    std::string out;
    for (const auto& s : statements) {
        if (s.text.empty()) continue;
        if (!out.empty()) out += ' ';
        out += s.text;
    }
    return out;
}

std::size_t ResolvedDocument::substitution_count() const {
    std::size_t n = 0;
    for (const auto& s : statements) n += s.substitutions.size();
    return n;
}

namespace {

// Applies substitutions right to left; a substitution overlapping one
// already applied is dropped.
ResolvedStatement rewrite(const AnnotatedStatement& statement, std::vector<Substitution> subs) {
    std::sort(subs.begin(), subs.end(), [](const Substitution& a, const Substitution& b) {
        if (a.original.start != b.original.start) return a.original.start > b.original.start;
        return a.original.end > b.original.end;
    });

    std::vector<std::string> words;
    words.reserve(statement.tokens.size());
    for (const auto& t : statement.tokens) words.push_back(t.text);

    ResolvedStatement out{statement.id, {}, {}};
    int applied_floor = statement.token_count();  // left edge of the last applied span
    for (auto& sub : subs) {
        if (sub.original.end > applied_floor) continue;
        const auto first = words.begin() + sub.original.start;
        words.erase(first + 1, words.begin() + sub.original.end);
        *first = sub.replacement;
        applied_floor = sub.original.start;
        out.substitutions.push_back(std::move(sub));
    }
    std::reverse(out.substitutions.begin(), out.substitutions.end());
    out.text = text::detokenize(words);
    return out;
}

}  // namespace

std::vector<ResolvedDocument> resolve(const Corpus& corpus, RepresentativeStrategy strategy) {
    std::map<std::string, std::vector<Substitution>> pending;
    for (std::size_t c = 0; c < corpus.coref_chains.size(); ++c) {
        const auto& chain = corpus.coref_chains[c];
        const auto rep = representative_mention(chain, strategy);
        if (!rep) continue;
        const auto& rep_mention = chain.mentions[*rep];
        const auto* rep_statement = corpus.find_statement(rep_mention.statement_id);
        if (!rep_statement) continue;
        const std::string replacement = rep_statement->span_text(rep_mention.span);
        for (const auto& m : chain.mentions) {
            if (!m.pronominal) continue;
            pending[m.statement_id].push_back({m.statement_id, m.span, replacement, c});
        }
    }

    std::vector<ResolvedDocument> docs;
    std::map<std::string, std::size_t> doc_index;
    for (const auto& statement : corpus.statements) {
        const std::string doc_id = statement.source_doc.value_or("");
        auto [it, inserted] = doc_index.emplace(doc_id, docs.size());
        if (inserted) docs.push_back({doc_id, {}});
        auto subs_it = pending.find(statement.id);
        auto subs = subs_it == pending.end() ? std::vector<Substitution>{} : std::move(subs_it->second);
        docs[it->second].statements.push_back(rewrite(statement, std::move(subs)));
    }
    return docs;
}

Corpus apply_substitutions(const Corpus& corpus, const std::vector<ResolvedDocument>& resolved) {
    Corpus out = corpus;
    std::map<std::string, AnnotatedStatement*> by_id;
    for (auto& s : out.statements) by_id.emplace(s.id, &s);
    for (const auto& doc : resolved) {
        for (const auto& rs : doc.statements) {
            auto it = by_id.find(rs.statement_id);
            if (it == by_id.end()) continue;
            auto& tokens = it->second->tokens;
            for (const auto& sub : rs.substitutions) {
                tokens[static_cast<std::size_t>(sub.original.start)].text = sub.replacement;
                for (int i = sub.original.start + 1; i < sub.original.end; ++i) {
                    tokens[static_cast<std::size_t>(i)].text.clear();
                }
            }
        }
    }
    return out;
}

nlohmann::json to_json(const ResolvedStatement& statement) {
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& s : statement.substitutions) {
        subs.push_back({{"chain", s.chain},
                        {"end", s.original.end},
                        {"replacement", s.replacement},
                        {"start", s.original.start}});
    }
    return {{"id", statement.statement_id}, {"substitutions", std::move(subs)}, {"text", statement.text}};
}

}  // namespace igw
