#include "igw/service.hpp"

#include "igw/abdico.hpp"
#include "igw/coref.hpp"
#include "igw/eval.hpp"
#include "igw/graph.hpp"
#include "igw/interchange.hpp"
#include "igw/semantic.hpp"

#include <httplib.h>

#include <chrono>
#include <ctime>
#include <iostream>
#include <regex>

namespace igw {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kEntryFile = "registry.json";
constexpr std::size_t kSnippetLength = 160;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RegistryEntry entry_for(const std::string& name, const fs::path& dir, const Corpus& corpus, std::string stamp) {
    return {name, dir, corpus.embedding_dim, corpus.docs.size(), corpus.statements.size(), std::move(stamp)};
}

}  // namespace

const char* to_string(EncodeMode mode) {
    switch (mode) {
        case EncodeMode::symmetric: return "symmetric";
        case EncodeMode::query: return "query";
        case EncodeMode::passage: return "passage";
    }
    return "symmetric";
}

HttpEncoder::HttpEncoder(std::string base_url) : base_url_(std::move(base_url)) {
    while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

Encoding HttpEncoder::encode(const std::string& text, EncodeMode mode) {
    httplib::Client client(base_url_);
    client.set_connection_timeout(5);
    client.set_read_timeout(60);
    const json request = {{"mode", to_string(mode)}, {"text", text}};
    auto res = client.Post("/encode", request.dump(), "application/json");
    if (!res) {
        throw Error(ErrorCode::upstream_error,
                    "adapter at " + base_url_ + " unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(ErrorCode::upstream_error, "adapter returned HTTP " + std::to_string(res->status));
    }
    try {
        const json body = json::parse(res->body);
        const auto values = body.at("vector").get<std::vector<double>>();
        Encoding out;
        out.vector = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
        out.model_tag = body.value("model_tag", "");
        if (auto dim = body.find("dim"); dim != body.end() && dim->get<std::size_t>() != values.size()) {
            throw Error(ErrorCode::upstream_error, "adapter vector length disagrees with its dim field");
        }
        return out;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::upstream_error, std::string("adapter response malformed: ") + e.what());
    }
}

json to_json(const RegistryEntry& e) {
    return {{"doc_count", e.doc_count},
            {"embedding_dim", e.embedding_dim ? json(*e.embedding_dim) : json(nullptr)},
            {"ingested_at", e.ingested_at},
            {"name", e.name},
            {"path", e.path.string()},
            {"statement_count", e.statement_count}};
}

// ---------------------------------------------------------------------------
// CorpusRegistry

CorpusRegistry::CorpusRegistry(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (!fs::is_directory(root_)) throw Error(ErrorCode::io_error, "registry root unusable: " + root_.string());

    for (const auto& dirent : fs::directory_iterator(root_)) {
        if (!dirent.is_directory()) continue;
        const std::string name = dirent.path().filename().string();
        if (!valid_name(name) || !fs::exists(dirent.path() / interchange::kMetaFile)) continue;
        try {
            auto corpus = std::make_shared<const Corpus>(load_corpus(dirent.path()));
            std::string stamp;
            if (fs::exists(dirent.path() / kEntryFile)) {
                stamp = json::parse(interchange::read_text(dirent.path() / kEntryFile)).value("ingested_at", "");
            }
            slots_[name] = {entry_for(name, dirent.path(), *corpus, stamp), corpus};
        } catch (const std::exception& e) {
            std::cerr << "igw: skipping corpus '" << name << "': " << e.what() << "\n";
        }
    }
}

bool CorpusRegistry::valid_name(const std::string& name) {
    static const std::regex pattern("[A-Za-z0-9_][A-Za-z0-9_.-]{0,127}");
    return std::regex_match(name, pattern);
}

std::vector<RegistryEntry> CorpusRegistry::entries() const {
    std::shared_lock lock(map_mutex_);
    std::vector<RegistryEntry> out;
    for (const auto& [name, slot] : slots_) out.push_back(slot.entry);
    return out;
}

std::optional<RegistryEntry> CorpusRegistry::entry(const std::string& name) const {
    std::shared_lock lock(map_mutex_);
    auto it = slots_.find(name);
    if (it == slots_.end()) return std::nullopt;
    return it->second.entry;
}

std::shared_ptr<const Corpus> CorpusRegistry::corpus(const std::string& name) const {
    std::shared_lock lock(map_mutex_);
    auto it = slots_.find(name);
    if (it == slots_.end()) throw Error(ErrorCode::not_found, "unknown corpus '" + name + "'");
    return it->second.corpus;
}

std::mutex& CorpusRegistry::writer_lock(const std::string& name) {
    std::lock_guard guard(writer_locks_mutex_);
    auto& slot = writer_locks_[name];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
}

RegistryEntry CorpusRegistry::ingest(const std::string& name, Corpus corpus, bool overwrite) {
    if (!valid_name(name)) throw Error(ErrorCode::invalid_argument, "invalid corpus name '" + name + "'");
    std::lock_guard write(writer_lock(name));
    if (!overwrite && entry(name)) throw Error(ErrorCode::conflict, "corpus '" + name + "' already exists");

    if (auto violations = validate(corpus); !violations.empty()) throw ValidationError(std::move(violations));

    const fs::path dir = root_ / name;
    const fs::path staging = root_ / ("." + name + ".staging");
    std::error_code ec;
    fs::remove_all(staging, ec);
    save_corpus(corpus, staging);
    const std::string stamp = utc_timestamp();
    interchange::write_text(staging / kEntryFile, interchange::canonical(json{{"ingested_at", stamp}}) + "\n");
    fs::remove_all(dir, ec);
    fs::rename(staging, dir, ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot install corpus at " + dir.string() + ": " + ec.message());

    auto snapshot = std::make_shared<const Corpus>(std::move(corpus));
    RegistryEntry e = entry_for(name, dir, *snapshot, stamp);
    std::unique_lock lock(map_mutex_);
    slots_[name] = {e, std::move(snapshot)};
    return e;
}

void CorpusRegistry::write_artifact(const std::string& name, const std::string& filename, const std::string& content) {
    const auto e = entry(name);
    if (!e) throw Error(ErrorCode::not_found, "unknown corpus '" + name + "'");
    std::lock_guard write(writer_lock(name));
    interchange::write_text(e->path / filename, content);
}

// ---------------------------------------------------------------------------
// Service

namespace {

json ok(json body) {
    body["schema_version"] = kSchemaVersion;
    return body;
}

std::string required_string(const json& request, const char* key) {
    auto it = request.find(key);
    if (it == request.end() || !it->is_string()) {
        throw Error(ErrorCode::invalid_argument, std::string("request field '") + key + "' (string) is required");
    }
    return it->get<std::string>();
}

template <typename T>
T optional_field(const json& request, const char* key, T fallback) {
    auto it = request.find(key);
    if (it == request.end() || it->is_null()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::invalid_argument, std::string("request field '") + key + "' has the wrong type");
    }
}

Eigen::VectorXd vector_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw Error(ErrorCode::invalid_argument, std::string(what) + " must be an array of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw Error(ErrorCode::invalid_argument, std::string(what) + " must hold numbers");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

std::string snippet(const std::string& text) {
    if (text.size() <= kSnippetLength) return text;
    std::size_t cut = kSnippetLength;
    while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
    return text.substr(0, cut) + "...";
}

std::string jsonl(const std::vector<json>& records) {
    std::string out;
    for (const auto& r : records) out += interchange::canonical(r) + "\n";
    return out;
}

ParseOutcome parse_for_request(const Corpus& corpus, const json& request) {
    const bool keep_unparsed = optional_field<bool>(request, "keep_unparsed", true);
    const std::string coref = optional_field<std::string>(request, "coref", "none");
    if (coref == "pure") return parse_corpus(apply_substitutions(corpus, resolve(corpus)), keep_unparsed);
    if (coref != "none") throw Error(ErrorCode::invalid_argument, "coref must be 'none' or 'pure'");
    return parse_corpus(corpus, keep_unparsed);
}

}  // namespace

Service::Service(CorpusRegistry& registry, std::shared_ptr<Encoder> encoder)
    : registry_(registry), encoder_(std::move(encoder)) {}

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return 400;
        case ErrorCode::not_found: return 404;
        case ErrorCode::conflict: return 409;
        case ErrorCode::failed_precondition: return 412;
        case ErrorCode::validation_failed: return 422;
        case ErrorCode::malformed_record: return 422;
        case ErrorCode::no_aim: return 422;
        case ErrorCode::io_error: return 500;
        case ErrorCode::upstream_error: return 502;
    }
    return 500;
}

json error_body(const Error& error) {
    json err = {{"code", to_string(error.code())}, {"message", error.what()}};
    if (const auto* v = dynamic_cast<const ValidationError*>(&error)) err["violations"] = v->violations();
    if (const auto* n = dynamic_cast<const NoAimError*>(&error)) err["statement_id"] = n->statement_id();
    return {{"error", std::move(err)}, {"schema_version", kSchemaVersion}};
}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) {
    static const std::string prefix = "/api/v1";
    try {
        if (!path.starts_with(prefix)) throw Error(ErrorCode::not_found, "no route for " + path);
        const std::string route = path.substr(prefix.size());

        json request = json::object();
        if (method == "POST") {
            try {
                request = body.empty() ? json::object() : json::parse(body);
            } catch (const json::parse_error& e) {
                throw Error(ErrorCode::invalid_argument, std::string("request body is not JSON: ") + e.what());
            }
            if (!request.is_object()) throw Error(ErrorCode::invalid_argument, "request body must be a JSON object");
        }

        if (method == "GET" && route == "/corpora") return {200, list_corpora()};
        if (method == "GET" && route.starts_with("/corpora/")) return {200, get_corpus(route.substr(9))};
        if (method == "POST") {
            if (route == "/corpora") return {201, ingest(request)};
            if (route == "/compare") return {200, compare(request)};
            if (route == "/search") return {200, search(request)};
            if (route == "/parse") return {200, parse(request)};
            if (route == "/cluster") return {200, cluster(request)};
            if (route == "/network") return {200, network(request)};
            if (route == "/evaluate") return {200, evaluate(request)};
        }
        throw Error(ErrorCode::not_found, "no route for " + method + " " + path);
    } catch (const Error& e) {
        return {http_status(e.code()), error_body(e)};
    } catch (const json::exception& e) {
        return {400, error_body(Error(ErrorCode::invalid_argument, e.what()))};
    } catch (const std::exception& e) {
        return {500, error_body(Error(ErrorCode::io_error, e.what()))};
    }
}

json Service::ingest(const json& request) {
    const std::string name = required_string(request, "name");
    const bool overwrite = optional_field<bool>(request, "overwrite", false);
    Corpus corpus;
    if (auto it = request.find("corpus"); it != request.end() && it->is_object()) {
        json payload = *it;
        if (!payload.contains("name")) payload["name"] = name;
        corpus = corpus_from_json(payload);
    } else if (auto p = request.find("path"); p != request.end() && p->is_string()) {
        corpus = load_corpus(p->get<std::string>());
    } else {
        throw Error(ErrorCode::invalid_argument, "ingest needs either 'corpus' (object) or 'path' (string)");
    }
    return ok({{"corpus", to_json(registry_.ingest(name, std::move(corpus), overwrite))}});
}

json Service::list_corpora() const {
    json list = json::array();
    for (const auto& e : registry_.entries()) list.push_back(to_json(e));
    return ok({{"corpora", std::move(list)}});
}

json Service::get_corpus(const std::string& name) const {
    auto e = registry_.entry(name);
    if (!e) throw Error(ErrorCode::not_found, "unknown corpus '" + name + "'");
    return ok({{"corpus", to_json(*e)}});
}

json Service::compare(const json& request) const {
    const auto a = registry_.corpus(required_string(request, "corpus_a"));
    const auto b = registry_.corpus(required_string(request, "corpus_b"));
    const auto top_n = optional_field<std::int64_t>(request, "top_n", -1);
    auto pairs = compare_corpora(*a, *b);
    const std::size_t total = pairs.size();
    if (top_n >= 0 && static_cast<std::size_t>(top_n) < pairs.size()) pairs.resize(static_cast<std::size_t>(top_n));

    json out = json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        json row = to_json(pairs[i], i + 1);
        row["text_a"] = a->find_doc(pairs[i].doc_a)->text;
        row["text_b"] = b->find_doc(pairs[i].doc_b)->text;
        out.push_back(std::move(row));
    }
    return ok({{"pairs", std::move(out)}, {"relevance", "cosine"}, {"total_pairs", total}});
}

json Service::search(const json& request) const {
    const auto corpus = registry_.corpus(required_string(request, "corpus"));
    const auto k = optional_field<std::int64_t>(request, "k", 10);
    if (k < 0) throw Error(ErrorCode::invalid_argument, "k must be non-negative");
    const Relevance relevance = parse_relevance(optional_field<std::string>(request, "relevance", "cosine"));

    Eigen::VectorXd query;
    json model_tag = nullptr;
    if (auto v = request.find("query_vector"); v != request.end() && !v->is_null()) {
        query = vector_from_json(*v, "query_vector");
    } else if (auto t = request.find("query_text"); t != request.end() && t->is_string()) {
        if (!encoder_) {
            throw Error(ErrorCode::failed_precondition, "query_text needs an adapter encoder (set IGW_ADAPTER_URL)");
        }
        auto encoding = encoder_->encode(t->get<std::string>(), EncodeMode::query);
        query = std::move(encoding.vector);
        model_tag = encoding.model_tag;
    } else {
        throw Error(ErrorCode::invalid_argument, "search needs 'query_vector' or 'query_text'");
    }

    const auto hits = igw::search(query, *corpus, static_cast<std::size_t>(k), relevance);
    json out = json::array();
    for (std::size_t i = 0; i < hits.size(); ++i) {
        out.push_back({{"doc_id", hits[i].doc_id},
                       {"rank", i + 1},
                       {"score", hits[i].score},
                       {"snippet", snippet(corpus->find_doc(hits[i].doc_id)->text)}});
    }
    return ok({{"hits", std::move(out)}, {"model_tag", model_tag}, {"relevance", to_string(relevance)}});
}

json Service::parse(const json& request) {
    const std::string name = required_string(request, "corpus");
    const auto corpus = registry_.corpus(name);
    const auto outcome = parse_for_request(*corpus, request);

    std::vector<json> records;
    for (const auto& r : outcome.records) records.push_back(to_json(r));
    std::vector<json> unparsed;
    for (const auto& id : outcome.unparsed) unparsed.push_back({{"statement_id", id}, {"reason", "no_aim"}});
    registry_.write_artifact(name, "records.jsonl", jsonl(records));
    registry_.write_artifact(name, "unparsed.jsonl", jsonl(unparsed));
    return ok({{"records", std::move(records)}, {"unparsed", outcome.unparsed}});
}

namespace {

std::vector<ClusterItem> cluster_items(const std::vector<ComponentText>& components, const json& request,
                                       Encoder* encoder) {
    const auto vectors = request.find("vectors");
    const bool inline_vectors = vectors != request.end() && vectors->is_object();
    if (!inline_vectors && !encoder && !components.empty()) {
        throw Error(ErrorCode::failed_precondition,
                    "clustering needs component vectors: pass 'vectors' or configure an adapter encoder");
    }
    std::vector<ClusterItem> items;
    for (const auto& c : components) {
        ClusterItem item{c.id, c.text, {}};
        if (inline_vectors) {
            auto v = vectors->find(c.id);
            if (v == vectors->end()) throw Error(ErrorCode::invalid_argument, "no vector for component '" + c.id + "'");
            item.vector = vector_from_json(*v, "component vector");
        } else {
            item.vector = encoder->encode(c.text, EncodeMode::symmetric).vector;
        }
        items.push_back(std::move(item));
    }
    return items;
}

ClusterOptions cluster_options(const json& request) {
    ClusterOptions options;
    const auto min_size = optional_field<std::int64_t>(request, "min_size", 10);
    if (min_size < 1) throw Error(ErrorCode::invalid_argument, "min_size must be at least 1");
    options.min_cluster_size = static_cast<std::size_t>(min_size);
    options.merge_threshold = optional_field<double>(request, "threshold", options.merge_threshold);
    return options;
}

}  // namespace

json Service::cluster(const json& request) {
    const std::string name = required_string(request, "corpus");
    const auto corpus = registry_.corpus(name);
    const ConstituentRole role = parse_constituent_role(optional_field<std::string>(request, "role", "both"));
    const auto label_terms = optional_field<std::size_t>(request, "label_terms", 4);

    const auto outcome = parse_for_request(*corpus, request);
    const auto items = cluster_items(component_texts(outcome.records, role), request, encoder_.get());
    Clustering clustering = cluster_components(items, cluster_options(request));
    label_clusters(clustering, items, label_terms);

    const auto records = clustering_to_jsonl(clustering);
    registry_.write_artifact(name, std::string("clusters_") + to_string(role) + ".jsonl", jsonl(records));
    json clusters = json::array();
    for (const auto& c : clustering.clusters) clusters.push_back(to_json(c));
    return ok({{"clusters", std::move(clusters)}, {"noise", clustering.noise}, {"role", to_string(role)}});
}

json Service::network(const json& request) {
    const std::string name = required_string(request, "corpus");
    const auto corpus = registry_.corpus(name);
    const auto outcome = parse_for_request(*corpus, request);
    const auto items = cluster_items(component_texts(outcome.records, ConstituentRole::both), request, encoder_.get());
    Clustering clustering = cluster_components(items, cluster_options(request));
    label_clusters(clustering, items, 4);

    const InstitutionalGraph graph = build_graph(outcome.records, clustering, clustering);
    const std::string dot = export_graph(graph, GraphFormat::dot_text);
    registry_.write_artifact(name, "graph.json", export_graph(graph, GraphFormat::json_graph));
    registry_.write_artifact(name, "graph.dot", dot);
    return ok({{"dot", dot}, {"graph", graph_to_json(graph)}});
}

json Service::evaluate(const json& request) {
    const std::string name = required_string(request, "corpus");
    const auto corpus = registry_.corpus(name);
    const std::string dataset = optional_field<std::string>(request, "dataset", name);
    const std::string averaging_text = optional_field<std::string>(request, "averaging", "micro");
    if (averaging_text != "micro" && averaging_text != "macro") {
        throw Error(ErrorCode::invalid_argument, "averaging must be 'micro' or 'macro'");
    }

    std::vector<GoldAnnotation> gold;
    if (auto g = request.find("gold"); g != request.end() && g->is_array()) {
        for (const auto& j : *g) gold.push_back(gold_from_json(j));
    } else if (auto p = request.find("gold_path"); p != request.end() && p->is_string()) {
        interchange::read_jsonl(p->get<std::string>(), [&](const json& j, int) { gold.push_back(gold_from_json(j)); });
    } else {
        throw Error(ErrorCode::invalid_argument, "evaluate needs 'gold' (array) or 'gold_path' (string)");
    }

    const auto outcome = parse_for_request(*corpus, request);
    const auto report = igw::evaluate(outcome.records, gold, dataset,
                                      averaging_text == "micro" ? Averaging::micro : Averaging::macro);
    const json report_json = to_json(report);
    registry_.write_artifact(name, "eval.json", report_json.dump(2) + "\n");
    return ok({{"report", report_json}});
}

// ---------------------------------------------------------------------------
// HttpServer

struct HttpServer::Impl {
    explicit Impl(Service& s) : service(s) {}
    Service& service;
    httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
    const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
        const Response r = impl_->service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    impl_->server.Get("/api/v1/.*", dispatch);
    impl_->server.Post("/api/v1/.*", dispatch);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace igw
