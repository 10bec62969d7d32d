// igw: batch front end over the library and the HTTP service.

#include "igw/abdico.hpp"
#include "igw/coref.hpp"
#include "igw/eval.hpp"
#include "igw/graph.hpp"
#include "igw/interchange.hpp"
#include "igw/semantic.hpp"
#include "igw/service.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : std::move(fallback);
}

struct Common {
    std::string root;
    std::string adapter_url;
};

// A corpus argument is a corpus directory, or else a registry name.
igw::Corpus open_corpus(const std::string& ref, const Common& common) {
    if (fs::exists(fs::path(ref) / igw::interchange::kMetaFile)) return igw::load_corpus(ref);
    if (!common.root.empty() && igw::CorpusRegistry::valid_name(ref)) {
        const fs::path dir = fs::path(common.root) / ref;
        if (fs::exists(dir / igw::interchange::kMetaFile)) return igw::load_corpus(dir);
    }
    throw igw::Error(igw::ErrorCode::not_found, "no corpus directory or registry entry '" + ref + "'");
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content;
    } else {
        igw::interchange::write_text(out, content);
    }
}

std::string jsonl(const std::vector<json>& records) {
    std::string s;
    for (const auto& r : records) s += igw::interchange::canonical(r) + "\n";
    return s;
}

std::vector<json> read_records(const std::string& path) {
    std::vector<json> out;
    igw::interchange::read_jsonl(path, [&](const json& j, int) { out.push_back(j); });
    return out;
}

std::vector<igw::AbdicoRecord> read_abdico(const std::string& path) {
    std::vector<igw::AbdicoRecord> out;
    for (const auto& j : read_records(path)) out.push_back(igw::record_from_json(j));
    return out;
}

Eigen::VectorXd read_vector_file(const std::string& path) {
    const json j = json::parse(igw::interchange::read_text(path));
    const auto values = (j.is_object() ? j.at("vector") : j).get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// {"id": ..., "vector": [...]} per line.
std::map<std::string, Eigen::VectorXd> read_vectors(const std::string& path) {
    std::map<std::string, Eigen::VectorXd> out;
    for (const auto& j : read_records(path)) {
        const auto values = j.at("vector").get<std::vector<double>>();
        out[j.at("id").get<std::string>()] =
            Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    }
    return out;
}

igw::HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Institutional grammar policy analysis"};
    app.require_subcommand(1);

    Common common;
    common.root = env_or("IGW_ROOT", "");
    common.adapter_url = env_or("IGW_ADAPTER_URL", "");
    app.add_option("--root", common.root, "registry root (env IGW_ROOT)");
    app.add_option("--adapter-url", common.adapter_url, "adapter base URL (env IGW_ADAPTER_URL)");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "validate a corpus directory and add it to the registry");
    std::string ingest_name, ingest_path;
    bool overwrite = false;
    ingest->add_option("--name", ingest_name)->required();
    ingest->add_option("--path", ingest_path)->required();
    ingest->add_flag("--overwrite", overwrite);

    // validate
    auto* validate = app.add_subcommand("validate", "report invariant violations of a corpus directory");
    std::string validate_path;
    validate->add_option("path", validate_path)->required();

    // compare
    auto* compare = app.add_subcommand("compare", "rank every cross-corpus doc pair by cosine");
    std::string corpus_a, corpus_b, compare_out;
    long top_n = -1;
    compare->add_option("--corpus-a", corpus_a)->required();
    compare->add_option("--corpus-b", corpus_b)->required();
    compare->add_option("--top", top_n, "keep the first N pairs");
    compare->add_option("-o,--out", compare_out, "pairs.jsonl (default stdout)");

    // search
    auto* search = app.add_subcommand("search", "rank docs against a query vector or text");
    std::string search_corpus, query_file, query_text, relevance = "cosine", search_out;
    std::size_t k = 10;
    search->add_option("--corpus", search_corpus)->required();
    auto* qf = search->add_option("--query-vector-file", query_file, "JSON array of numbers");
    search->add_option("--query-text", query_text, "encoded through the adapter")->excludes(qf);
    search->add_option("--k", k);
    search->add_option("--relevance", relevance)->check(CLI::IsMember({"cosine", "dot"}));
    search->add_option("-o,--out", search_out);

    // parse
    auto* parse = app.add_subcommand("parse", "extract ABDICO records");
    std::string parse_corpus, parse_out, unparsed_out = "unparsed.jsonl", coref = "none";
    bool keep_unparsed = false;
    parse->add_option("--corpus", parse_corpus)->required();
    parse->add_flag("--keep-unparsed", keep_unparsed, "write NoAim statements instead of failing");
    parse->add_option("--unparsed-out", unparsed_out);
    parse->add_option("--coref", coref)->check(CLI::IsMember({"none", "pure"}));
    parse->add_option("-o,--out", parse_out, "records.jsonl (default stdout)");

    // resolve
    auto* resolve = app.add_subcommand("resolve", "apply coreference chains");
    std::string resolve_corpus, resolve_out;
    resolve->add_option("--corpus", resolve_corpus)->required();
    resolve->add_option("-o,--out", resolve_out, "resolved.jsonl (default stdout)");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "cluster attribute/object constituents");
    std::string cluster_corpus, cluster_records, vectors_file, role = "both", cluster_out;
    std::size_t min_size = 10, label_terms = 4;
    double threshold = 0.4;
    cluster->add_option("--corpus", cluster_corpus);
    cluster->add_option("--records", cluster_records, "records.jsonl instead of parsing --corpus");
    cluster->add_option("--vectors", vectors_file, "{id, vector} per line; ids are <statement>#A / #B");
    cluster->add_option("--role", role)->check(CLI::IsMember({"attribute", "object", "both"}));
    cluster->add_option("--min-size", min_size)->check(CLI::PositiveNumber);
    cluster->add_option("--threshold", threshold);
    cluster->add_option("--label-terms", label_terms);
    cluster->add_option("-o,--out", cluster_out, "clusters.jsonl (default stdout)");

    // network
    auto* network = app.add_subcommand("network", "build the attribute -> object graph");
    std::string network_records, network_clusters, object_clusters, format = "json-graph", network_out;
    network->add_option("--records", network_records)->required();
    network->add_option("--clusters", network_clusters, "pooled, or attribute clusters")->required();
    network->add_option("--object-clusters", object_clusters, "separate object clusters");
    network->add_option("--format", format)->check(CLI::IsMember({"json-graph", "json", "dot-text", "dot"}));
    network->add_option("-o,--out", network_out);

    // eval
    auto* eval = app.add_subcommand("eval", "score records against gold annotations");
    std::string eval_records, gold_path, dataset = "dataset", eval_out;
    bool macro = false;
    eval->add_option("--records", eval_records)->required();
    eval->add_option("--gold", gold_path)->required();
    eval->add_option("--dataset", dataset);
    eval->add_flag("--macro", macro, "average per statement instead of pooling tokens");
    eval->add_option("-o,--out", eval_out, "eval.json (default stdout)");

    // serve
    auto* serve = app.add_subcommand("serve", "run the HTTP service");
    std::string host = "127.0.0.1";
    int port = std::atoi(env_or("IGW_PORT", "8080").c_str());
    serve->add_option("--host", host);
    serve->add_option("--port", port, "env IGW_PORT");

    CLI11_PARSE(app, argc, argv);

    std::shared_ptr<igw::Encoder> encoder;
    if (!common.adapter_url.empty()) encoder = std::make_shared<igw::HttpEncoder>(common.adapter_url);

    try {
        if (*ingest) {
            if (common.root.empty()) throw igw::Error(igw::ErrorCode::invalid_argument, "--root or IGW_ROOT is required");
            igw::CorpusRegistry registry(common.root);
            const auto entry = registry.ingest(ingest_name, igw::load_corpus(ingest_path), overwrite);
            std::cout << igw::to_json(entry).dump(2) << "\n";
        } else if (*validate) {
            igw::Corpus corpus;
            try {
                corpus = igw::load_corpus(validate_path);
            } catch (const igw::ValidationError& e) {
                std::cout << igw::format_violations(e.violations(), e.violations().size());
                return 1;
            }
            std::cout << "ok: " << corpus.docs.size() << " docs, " << corpus.statements.size() << " statements, "
                      << corpus.coref_chains.size() << " chains\n";
        } else if (*compare) {
            const auto a = open_corpus(corpus_a, common);
            const auto b = open_corpus(corpus_b, common);
            auto pairs = igw::compare_corpora(a, b);
            if (top_n >= 0 && static_cast<std::size_t>(top_n) < pairs.size()) pairs.resize(static_cast<std::size_t>(top_n));
            std::vector<json> rows;
            for (std::size_t i = 0; i < pairs.size(); ++i) rows.push_back(igw::to_json(pairs[i], i + 1));
            emit(compare_out, jsonl(rows));
        } else if (*search) {
            const auto corpus = open_corpus(search_corpus, common);
            Eigen::VectorXd query;
            if (!query_file.empty()) {
                query = read_vector_file(query_file);
            } else if (!query_text.empty()) {
                if (!encoder) throw igw::Error(igw::ErrorCode::failed_precondition, "--query-text needs an adapter URL");
                query = encoder->encode(query_text, igw::EncodeMode::query).vector;
            } else {
                throw igw::Error(igw::ErrorCode::invalid_argument, "give --query-vector-file or --query-text");
            }
            const auto hits = igw::search(query, corpus, k, igw::parse_relevance(relevance));
            std::vector<json> rows;
            for (std::size_t i = 0; i < hits.size(); ++i) {
                rows.push_back({{"doc_id", hits[i].doc_id}, {"rank", i + 1}, {"score", hits[i].score}});
            }
            emit(search_out, jsonl(rows));
        } else if (*parse) {
            auto corpus = open_corpus(parse_corpus, common);
            if (coref == "pure") corpus = igw::apply_substitutions(corpus, igw::resolve(corpus));
            const auto outcome = igw::parse_corpus(corpus, keep_unparsed);
            std::vector<json> rows;
            for (const auto& r : outcome.records) rows.push_back(igw::to_json(r));
            emit(parse_out, jsonl(rows));
            if (keep_unparsed) {
                std::vector<json> missing;
                for (const auto& id : outcome.unparsed) missing.push_back({{"reason", "no_aim"}, {"statement_id", id}});
                igw::interchange::write_text(unparsed_out, jsonl(missing));
                if (!outcome.unparsed.empty()) {
                    std::cerr << "igw: " << outcome.unparsed.size() << " statement(s) without an aim -> "
                              << unparsed_out << "\n";
                }
            }
        } else if (*resolve) {
            const auto corpus = open_corpus(resolve_corpus, common);
            std::vector<json> rows;
            for (const auto& doc : igw::resolve(corpus)) {
                for (const auto& s : doc.statements) rows.push_back(igw::to_json(s));
            }
            emit(resolve_out, jsonl(rows));
        } else if (*cluster) {
            std::vector<igw::AbdicoRecord> records;
            if (!cluster_records.empty()) {
                records = read_abdico(cluster_records);
            } else if (!cluster_corpus.empty()) {
                records = igw::parse_corpus(open_corpus(cluster_corpus, common), true).records;
            } else {
                throw igw::Error(igw::ErrorCode::invalid_argument, "give --records or --corpus");
            }
            const auto components = igw::component_texts(records, igw::parse_constituent_role(role));
            std::map<std::string, Eigen::VectorXd> vectors;
            if (!vectors_file.empty()) vectors = read_vectors(vectors_file);
            std::vector<igw::ClusterItem> items;
            for (const auto& c : components) {
                igw::ClusterItem item{c.id, c.text, {}};
                if (auto it = vectors.find(c.id); it != vectors.end()) {
                    item.vector = it->second;
                } else if (encoder) {
                    item.vector = encoder->encode(c.text, igw::EncodeMode::symmetric).vector;
                } else {
                    throw igw::Error(igw::ErrorCode::failed_precondition,
                                     "no vector for '" + c.id + "': pass --vectors or an adapter URL");
                }
                items.push_back(std::move(item));
            }
            igw::ClusterOptions options;
            options.min_cluster_size = min_size;
            options.merge_threshold = threshold;
            auto clustering = igw::cluster_components(items, options);
            igw::label_clusters(clustering, items, label_terms);
            emit(cluster_out, jsonl(igw::clustering_to_jsonl(clustering)));
        } else if (*network) {
            const auto records = read_abdico(network_records);
            const auto attributes = igw::clustering_from_jsonl(read_records(network_clusters));
            const auto objects =
                object_clusters.empty() ? attributes : igw::clustering_from_jsonl(read_records(object_clusters));
            const auto graph = igw::build_graph(records, attributes, objects);
            emit(network_out, igw::export_graph(graph, igw::parse_graph_format(format)));
        } else if (*eval) {
            std::vector<igw::GoldAnnotation> gold;
            for (const auto& j : read_records(gold_path)) gold.push_back(igw::gold_from_json(j));
            const auto report = igw::evaluate(read_abdico(eval_records), gold, dataset,
                                              macro ? igw::Averaging::macro : igw::Averaging::micro);
            emit(eval_out, igw::to_json(report).dump(2) + "\n");
        } else if (*serve) {
            if (common.root.empty()) throw igw::Error(igw::ErrorCode::invalid_argument, "--root or IGW_ROOT is required");
            igw::CorpusRegistry registry(common.root);
            igw::Service service(registry, encoder);
            igw::HttpServer server(service);
            const int bound = server.bind(host, port);
            if (bound < 0) throw igw::Error(igw::ErrorCode::io_error, "cannot bind " + host + ":" + std::to_string(port));
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "igw: serving " << registry.entries().size() << " corpora from " << common.root << " on http://"
                      << host << ":" << bound << "/api/v1\n";
            server.serve();
            g_server = nullptr;
        }
    } catch (const igw::ValidationError& e) {
        std::cerr << "igw: " << e.what() << "\n" << igw::format_violations(e.violations());
        return 1;
    } catch (const igw::Error& e) {
        std::cerr << "igw: " << igw::to_string(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "igw: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
