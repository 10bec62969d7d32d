#include "igw/eval.hpp"

#include "igw/text.hpp"

#include <algorithm>
#include <map>

namespace igw {

const char* to_string(ConstituentKind kind) {
    switch (kind) {
        case ConstituentKind::attribute: return "attribute";
        case ConstituentKind::object: return "object";
        case ConstituentKind::aim: return "aim";
        case ConstituentKind::deontic: return "deontic";
    }
    return "attribute";
}

TokenSet normalize(const std::vector<std::string>& tokens, ConstituentKind kind) {
    TokenSet out;
    for (const auto& token : tokens) {
        for (const auto& piece : text::split_whitespace(token)) {
            std::string w = text::to_lower(piece);
            if (text::is_stopword(w)) continue;
            w = text::strip_punctuation(w);
            if (w.empty() || text::is_stopword(w)) continue;
            if (kind == ConstituentKind::aim) {
                w = text::lemmatize_verb(w);
                if (text::is_stopword(w)) continue;
            }
            out.insert(std::move(w));
        }
    }
    return out;
}

std::vector<std::string> predicted_tokens(const AbdicoRecord& record, ConstituentKind kind) {
    switch (kind) {
        case ConstituentKind::attribute:
            return record.attribute ? text::split_whitespace(record.attribute->text) : std::vector<std::string>{};
        case ConstituentKind::object:
            return record.object ? text::split_whitespace(record.object->text) : std::vector<std::string>{};
        case ConstituentKind::aim:
            return {record.aim.lemma.empty() ? record.aim.text : record.aim.lemma};
        case ConstituentKind::deontic:
            return record.deontic ? text::split_whitespace(*record.deontic) : std::vector<std::string>{};
    }
    return {};
}

double f1_score(double precision, double recall) {
    return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

namespace {

struct Counts {
    std::size_t overlap = 0;
    std::size_t predicted = 0;
    std::size_t gold = 0;
};

Counts count(const ScoredPair& pair) {
    Counts c;
    c.predicted = pair.predicted.size();
    c.gold = pair.gold.size();
    for (const auto& t : pair.predicted) c.overlap += pair.gold.count(t);
    return c;
}

// An empty side scores 1 only when the other side is empty too.
std::pair<double, double> precision_recall(const Counts& c) {
    const double p = c.predicted ? static_cast<double>(c.overlap) / static_cast<double>(c.predicted)
                                 : (c.gold == 0 ? 1.0 : 0.0);
    const double r = c.gold ? static_cast<double>(c.overlap) / static_cast<double>(c.gold)
                            : (c.predicted == 0 ? 1.0 : 0.0);
    return {p, r};
}

}  // namespace

ConstituentScore score_constituent(const std::vector<ScoredPair>& pairs, Averaging averaging) {
    ConstituentScore s;
    if (pairs.empty()) return s;
    s.available = true;
    s.statements = pairs.size();
    if (averaging == Averaging::micro) {
        Counts total;
        for (const auto& pair : pairs) {
            const Counts c = count(pair);
            total.overlap += c.overlap;
            total.predicted += c.predicted;
            total.gold += c.gold;
        }
        std::tie(s.precision, s.recall) = precision_recall(total);
    } else {
        for (const auto& pair : pairs) {
            const auto [p, r] = precision_recall(count(pair));
            s.precision += p;
            s.recall += r;
        }
        s.precision /= static_cast<double>(pairs.size());
        s.recall /= static_cast<double>(pairs.size());
    }
    s.f1 = f1_score(s.precision, s.recall);
    return s;
}

EvalReport evaluate(const std::vector<AbdicoRecord>& records, const std::vector<GoldAnnotation>& gold,
                    const std::string& dataset, Averaging averaging) {
    EvalReport report;
    report.dataset = dataset;
    report.averaging = averaging;
    report.stopword_version = text::kStopwordListVersion;
    report.stopword_hash = text::stopword_list_hash();

    std::map<std::string, const AbdicoRecord*> by_id;
    for (const auto& r : records) by_id.emplace(r.statement_id, &r);

    std::map<std::string, const GoldAnnotation*> gold_by_id;
    for (const auto& g : gold) gold_by_id.emplace(g.statement_id, &g);

    std::array<std::vector<ScoredPair>, 4> pairs;
    for (const auto& [id, g] : gold_by_id) {
        if (!g->coded) continue;
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            report.missing_records.push_back(id);
            continue;
        }
        ++report.evaluated_statements;
        for (ConstituentKind kind : kConstituentKinds) {
            const auto& gc = (*g)[kind];
            if (gc.implicit) continue;
            pairs[static_cast<std::size_t>(kind)].push_back(
                {normalize(predicted_tokens(*it->second, kind), kind), normalize(gc.tokens, kind)});
        }
    }
    for (const auto& [id, r] : by_id) {
        if (!gold_by_id.count(id)) report.missing_gold.push_back(id);
    }
    for (ConstituentKind kind : kConstituentKinds) {
        report.scores[static_cast<std::size_t>(kind)] = score_constituent(pairs[static_cast<std::size_t>(kind)], averaging);
    }
    return report;
}

nlohmann::json to_json(const EvalReport& report) {
    nlohmann::json metrics = nlohmann::json::object();
    for (ConstituentKind kind : kConstituentKinds) {
        const auto& s = report[kind];
        if (s.available) {
            metrics[to_string(kind)] = {{"available", true}, {"f1", s.f1}, {"precision", s.precision},
                                        {"recall", s.recall}, {"statements", s.statements}};
        } else {
            metrics[to_string(kind)] = {{"available", false}, {"f1", nullptr}, {"precision", nullptr},
                                        {"recall", nullptr}, {"statements", 0}};
        }
    }
    return {{"averaging", report.averaging == Averaging::micro ? "micro" : "macro"},
            {"dataset", report.dataset},
            {"evaluated_statements", report.evaluated_statements},
            {"metrics", std::move(metrics)},
            {"missing_gold", report.missing_gold},
            {"missing_records", report.missing_records},
            {"stopwords", {{"hash", report.stopword_hash}, {"version", report.stopword_version}}}};
}

nlohmann::json to_json(const GoldAnnotation& gold) {
    nlohmann::json j = {{"coded", gold.coded}, {"statement_id", gold.statement_id}};
    for (ConstituentKind kind : kConstituentKinds) {
        j[to_string(kind)] = {{"implicit", gold[kind].implicit}, {"tokens", gold[kind].tokens}};
    }
    return j;
}

GoldAnnotation gold_from_json(const nlohmann::json& j) {
    GoldAnnotation g;
    g.statement_id = j.at("statement_id").get<std::string>();
    if (auto it = j.find("coded"); it != j.end()) g.coded = it->get<bool>();
    for (ConstituentKind kind : kConstituentKinds) {
        auto it = j.find(to_string(kind));
        if (it == j.end() || it->is_null()) continue;
        auto& c = g[kind];
        if (auto t = it->find("tokens"); t != it->end()) c.tokens = t->get<std::vector<std::string>>();
        if (auto imp = it->find("implicit"); imp != it->end()) c.implicit = imp->get<bool>();
    }
    return g;
}

}  // namespace igw
