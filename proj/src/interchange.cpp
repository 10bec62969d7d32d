#include "igw/interchange.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>

namespace igw {

using nlohmann::json;
namespace fs = std::filesystem;

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorCode::validation_failed, "validation failed: " + format_violations(violations)),
      violations_(std::move(violations)) {}

void to_json(json& j, const Violation& v) { j = json{{"field", v.field}, {"id", v.id}, {"rule", v.rule}}; }

std::string format_violations(const std::vector<Violation>& violations, std::size_t limit) {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size() && i < limit; ++i) {
        if (i) out << "; ";
        out << violations[i].id << " " << violations[i].field << ": " << violations[i].rule;
    }
    if (violations.size() > limit) out << "; ... (" << violations.size() << " total)";
    return out.str();
}

std::vector<Violation> validate_statement(const AnnotatedStatement& s) {
    std::vector<Violation> out;
    const int n = s.token_count();

    for (int i = 0; i < n; ++i) {
        if (s.tokens[static_cast<std::size_t>(i)].index != i) {
            out.push_back({s.id, "tokens", rules::kContiguousIndex});
            break;
        }
    }
    int roots = 0;
    for (int i = 0; i < n; ++i) {
        const int head = s.tokens[static_cast<std::size_t>(i)].head;
        if (head == -1) {
            ++roots;
        } else if (head < 0 || head >= n) {
            out.push_back({s.id, "tokens[" + std::to_string(i) + "].head", rules::kHeadRange});
        }
    }
    if (roots != 1) out.push_back({s.id, "tokens", rules::kSingleRoot});

    for (std::size_t f = 0; f < s.frames.size(); ++f) {
        const auto& frame = s.frames[f];
        const std::string prefix = "frames[" + std::to_string(f) + "]";
        if (frame.predicate < 0 || frame.predicate >= n) {
            out.push_back({s.id, prefix + ".predicate", rules::kPredicateRange});
        }
        std::map<std::string, std::vector<TokenSpan>> core;
        for (std::size_t r = 0; r < frame.roles.size(); ++r) {
            const auto& role = frame.roles[r];
            const std::string field = prefix + ".roles[" + std::to_string(r) + "]";
            if (!is_valid_role_label(role.label)) out.push_back({s.id, field, rules::kRoleLabel});
            if (role.span.start < 0 || role.span.end > n || role.span.start >= role.span.end) {
                out.push_back({s.id, field, rules::kSpanRange});
            }
            if (core_argument_rank(role.label)) core[role.label].push_back(role.span);
        }
        // Several disjoint spans under one core label form a single
        // discontinuous argument; overlapping ones are two arguments.
        for (auto& [label, spans] : core) {
            std::sort(spans.begin(), spans.end());
            for (std::size_t k = 1; k < spans.size(); ++k) {
                if (spans[k].start < spans[k - 1].end) {
                    out.push_back({s.id, prefix + "." + label, rules::kUniqueCoreArgument});
                    break;
                }
            }
        }
    }
    return out;
}

std::vector<Violation> validate(const Corpus& corpus) {
    std::vector<Violation> out;

    if (corpus.embedding_dim && *corpus.embedding_dim <= 0) {
        out.push_back({corpus.name, "embedding_dim", rules::kPositiveDimension});
    }

    std::set<std::string> doc_ids;
    for (const auto& doc : corpus.docs) {
        if (!doc_ids.insert(doc.id).second) out.push_back({doc.id, "id", rules::kUniqueDocId});
        if (doc.embedding) {
            const bool ok = corpus.embedding_dim && doc.embedding->size() == *corpus.embedding_dim;
            if (!ok) out.push_back({doc.id, "embedding", rules::kEmbeddingDimension});
        }
    }

    std::map<std::string, const AnnotatedStatement*> by_id;
    for (const auto& s : corpus.statements) {
        if (!by_id.emplace(s.id, &s).second) out.push_back({s.id, "id", rules::kUniqueStatementId});
        auto v = validate_statement(s);
        out.insert(out.end(), v.begin(), v.end());
    }

    for (std::size_t c = 0; c < corpus.coref_chains.size(); ++c) {
        const auto& chain = corpus.coref_chains[c];
        const std::string id = "chain[" + std::to_string(c) + "]";
        if (chain.mentions.size() < 2) out.push_back({id, "mentions", rules::kChainLength});
        for (std::size_t m = 0; m < chain.mentions.size(); ++m) {
            const auto& mention = chain.mentions[m];
            auto it = by_id.find(mention.statement_id);
            const bool ok = it != by_id.end() && mention.span.start >= 0 &&
                            mention.span.start < mention.span.end &&
                            mention.span.end <= it->second->token_count();
            if (!ok) out.push_back({id, "mentions[" + std::to_string(m) + "]", rules::kMentionSpan});
        }
    }
    return out;
}

namespace interchange {

std::string canonical(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::strict); }

json to_json(const Token& t) {
    return json{{"deprel", t.deprel}, {"head", t.head},   {"index", t.index}, {"is_stopword", t.is_stopword},
                {"lemma", t.lemma},   {"pos", to_string(t.pos)}, {"text", t.text}};
}

json to_json(const SrlFrame& frame) {
    json roles = json::array();
    for (const auto& r : frame.roles) roles.push_back(json::array({r.label, r.span.start, r.span.end}));
    return json{{"predicate", frame.predicate}, {"roles", std::move(roles)}};
}

json to_json(const AnnotatedStatement& s) {
    json tokens = json::array();
    for (const auto& t : s.tokens) tokens.push_back(to_json(t));
    json frames = json::array();
    for (const auto& f : s.frames) frames.push_back(to_json(f));
    return json{{"frames", std::move(frames)},
                {"id", s.id},
                {"source_doc", s.source_doc ? json(*s.source_doc) : json(nullptr)},
                {"tokens", std::move(tokens)}};
}

json to_json(const PolicyDoc& doc) {
    json embedding = nullptr;
    if (doc.embedding) {
        embedding = json::array();
        for (Eigen::Index i = 0; i < doc.embedding->size(); ++i) embedding.push_back((*doc.embedding)(i));
    }
    return json{{"embedding", std::move(embedding)}, {"id", doc.id}, {"metadata", doc.metadata}, {"text", doc.text}};
}

json to_json(const CorefChain& chain) {
    json mentions = json::array();
    for (const auto& m : chain.mentions) {
        mentions.push_back(json{{"end", m.span.end},
                                {"pronominal", m.pronominal},
                                {"start", m.span.start},
                                {"statement_id", m.statement_id}});
    }
    return json{{"mentions", std::move(mentions)}};
}

namespace {

template <typename T>
T field(const json& j, const char* key) {
    if (!j.is_object()) throw std::invalid_argument("record is not an object");
    auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
    if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a string");
    } else if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw std::invalid_argument(std::string("field '") + key + "' must be a boolean");
    } else if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) {
            throw std::invalid_argument(std::string("field '") + key + "' must be an integer");
        }
    }
    return it->get<T>();
}

const json& array_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_array()) {
        throw std::invalid_argument(std::string("field '") + key + "' must be an array");
    }
    return *it;
}

}  // namespace

AnnotatedStatement statement_from_json(const json& j) {
    AnnotatedStatement s;
    s.id = field<std::string>(j, "id");
    for (const auto& tj : array_field(j, "tokens")) {
        Token t;
        t.index = field<int>(tj, "index");
        t.text = field<std::string>(tj, "text");
        t.lemma = field<std::string>(tj, "lemma");
        const auto pos = field<std::string>(tj, "pos");
        auto parsed = parse_part_of_speech(pos);
        if (!parsed) throw std::invalid_argument("unknown pos '" + pos + "'");
        t.pos = *parsed;
        t.head = field<int>(tj, "head");
        t.deprel = field<std::string>(tj, "deprel");
        t.is_stopword = field<bool>(tj, "is_stopword");
        s.tokens.push_back(std::move(t));
    }
    for (const auto& fj : array_field(j, "frames")) {
        SrlFrame f;
        f.predicate = field<int>(fj, "predicate");
        for (const auto& rj : array_field(fj, "roles")) {
            if (!rj.is_array() || rj.size() != 3 || !rj[0].is_string() || !rj[1].is_number_integer() ||
                !rj[2].is_number_integer()) {
                throw std::invalid_argument("role must be [label, start, end]");
            }
            f.roles.push_back({rj[0].get<std::string>(), {rj[1].get<int>(), rj[2].get<int>()}});
        }
        s.frames.push_back(std::move(f));
    }
    if (auto it = j.find("source_doc"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw std::invalid_argument("field 'source_doc' must be a string or null");
        s.source_doc = it->get<std::string>();
    }
    return s;
}

PolicyDoc doc_from_json(const json& j) {
    PolicyDoc d;
    d.id = field<std::string>(j, "id");
    d.text = field<std::string>(j, "text");
    if (auto it = j.find("metadata"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) throw std::invalid_argument("field 'metadata' must be an object");
        for (const auto& [k, v] : it->items()) {
            if (!v.is_string()) throw std::invalid_argument("metadata values must be strings");
            d.metadata.emplace(k, v.get<std::string>());
        }
    }
    if (auto it = j.find("embedding"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw std::invalid_argument("field 'embedding' must be an array or null");
        Eigen::VectorXd v(static_cast<Eigen::Index>(it->size()));
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_number()) throw std::invalid_argument("embedding values must be numbers");
            v(static_cast<Eigen::Index>(i)) = (*it)[i].get<double>();
        }
        d.embedding = std::move(v);
    }
    return d;
}

CorefChain chain_from_json(const json& j) {
    CorefChain c;
    for (const auto& mj : array_field(j, "mentions")) {
        c.mentions.push_back({field<std::string>(mj, "statement_id"),
                              {field<int>(mj, "start"), field<int>(mj, "end")},
                              field<bool>(mj, "pronominal")});
    }
    return c;
}

void read_jsonl(const fs::path& path, const std::function<void(const json&, int)>& on_record) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::malformed_record,
                        path.filename().string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        on_record(j, line_no);
    }
}

void write_text(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_jsonl(const fs::path& path, const std::vector<json>& records) {
    std::string content;
    for (const auto& r : records) {
        content += canonical(r);
        content += '\n';
    }
    write_text(path, content);
}

}  // namespace interchange

namespace {

template <typename Parse>
auto parse_record(const std::string& file, const json& j, int line, Parse&& parse) {
    try {
        return parse(j);
    } catch (const std::exception& e) {
        std::string id = "?";
        if (j.is_object()) {
            if (auto it = j.find("id"); it != j.end() && it->is_string()) id = it->get<std::string>();
        }
        throw Error(ErrorCode::malformed_record,
                    file + ":" + std::to_string(line) + ": record '" + id + "': " + e.what());
    }
}

void check_or_throw(const Corpus& corpus) {
    auto violations = validate(corpus);
    if (!violations.empty()) throw ValidationError(std::move(violations));
}

}  // namespace

Corpus load_corpus(const fs::path& dir) {
    using namespace interchange;
    if (!fs::is_directory(dir)) throw Error(ErrorCode::io_error, "corpus directory not found: " + dir.string());
    for (const char* required : {kMetaFile, kDocsFile, kStatementsFile}) {
        if (!fs::exists(dir / required)) {
            throw Error(ErrorCode::io_error, "missing file " + (dir / required).string());
        }
    }

    Corpus corpus;
    json meta;
    try {
        meta = json::parse(read_text(dir / kMetaFile));
        corpus.name = meta.at("name").get<std::string>();
        if (!meta.at("embedding_dim").is_null()) corpus.embedding_dim = meta.at("embedding_dim").get<int>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::malformed_record, std::string(kMetaFile) + ": " + e.what());
    }

    read_jsonl(dir / kDocsFile, [&](const json& j, int line) {
        corpus.docs.push_back(parse_record(kDocsFile, j, line, doc_from_json));
    });
    read_jsonl(dir / kStatementsFile, [&](const json& j, int line) {
        corpus.statements.push_back(parse_record(kStatementsFile, j, line, statement_from_json));
    });
    if (fs::exists(dir / kChainsFile)) {
        read_jsonl(dir / kChainsFile, [&](const json& j, int line) {
            corpus.coref_chains.push_back(parse_record(kChainsFile, j, line, chain_from_json));
        });
    }

    if (auto counts = meta.find("counts"); counts != meta.end()) {
        const auto expect = [&](const char* key, std::size_t actual) {
            if (auto it = counts->find(key); it != counts->end() && it->get<std::size_t>() != actual) {
                throw Error(ErrorCode::malformed_record, std::string(kMetaFile) + ": count of " + key + " is " +
                                                             std::to_string(it->get<std::size_t>()) +
                                                             " but files hold " + std::to_string(actual));
            }
        };
        expect("docs", corpus.docs.size());
        expect("statements", corpus.statements.size());
        expect("chains", corpus.coref_chains.size());
    }

    check_or_throw(corpus);
    return corpus;
}

void save_corpus(const Corpus& corpus, const fs::path& dir) {
    using namespace interchange;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir)) throw Error(ErrorCode::io_error, "cannot create " + dir.string());

    json meta = {{"counts",
                  {{"chains", corpus.coref_chains.size()},
                   {"docs", corpus.docs.size()},
                   {"statements", corpus.statements.size()}}},
                 {"embedding_dim", corpus.embedding_dim ? json(*corpus.embedding_dim) : json(nullptr)},
                 {"name", corpus.name}};
    write_text(dir / kMetaFile, canonical(meta) + "\n");

    std::vector<json> docs, statements, chains;
    for (const auto& d : corpus.docs) docs.push_back(to_json(d));
    for (const auto& s : corpus.statements) statements.push_back(to_json(s));
    for (const auto& c : corpus.coref_chains) chains.push_back(to_json(c));
    write_jsonl(dir / kDocsFile, docs);
    write_jsonl(dir / kStatementsFile, statements);
    write_jsonl(dir / kChainsFile, chains);
}

Corpus corpus_from_json(const json& payload) {
    using namespace interchange;
    Corpus corpus;
    try {
        corpus.name = payload.at("name").get<std::string>();
        if (auto it = payload.find("embedding_dim"); it != payload.end() && !it->is_null()) {
            corpus.embedding_dim = it->get<int>();
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::malformed_record, std::string("corpus header: ") + e.what());
    }
    const auto each = [&](const char* key, const char* label, auto&& parse, auto& sink) {
        auto it = payload.find(key);
        if (it == payload.end() || it->is_null()) return;
        if (!it->is_array()) throw Error(ErrorCode::malformed_record, std::string(key) + " must be an array");
        int line = 0;
        for (const auto& j : *it) sink.push_back(parse_record(label, j, ++line, parse));
    };
    each("docs", kDocsFile, doc_from_json, corpus.docs);
    each("statements", kStatementsFile, statement_from_json, corpus.statements);
    each("chains", kChainsFile, chain_from_json, corpus.coref_chains);
    check_or_throw(corpus);
    return corpus;
}

json corpus_to_json(const Corpus& corpus) {
    using namespace interchange;
    json docs = json::array(), statements = json::array(), chains = json::array();
    for (const auto& d : corpus.docs) docs.push_back(to_json(d));
    for (const auto& s : corpus.statements) statements.push_back(to_json(s));
    for (const auto& c : corpus.coref_chains) chains.push_back(to_json(c));
    return json{{"chains", std::move(chains)},
                {"docs", std::move(docs)},
                {"embedding_dim", corpus.embedding_dim ? json(*corpus.embedding_dim) : json(nullptr)},
                {"name", corpus.name},
                {"statements", std::move(statements)}};
}

}  // namespace igw
