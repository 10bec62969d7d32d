#pragma once

#include "igw/error.hpp"
#include "igw/types.hpp"

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace igw {

inline constexpr int kSchemaVersion = 1;

enum class EncodeMode { symmetric, query, passage };
const char* to_string(EncodeMode mode);

struct Encoding {
    Eigen::VectorXd vector;
    std::string model_tag;
};

/// Text-to-vector provider. The core never loads models itself.
class Encoder {
public:
    virtual ~Encoder() = default;
    virtual Encoding encode(const std::string& text, EncodeMode mode) = 0;
};

/// Talks to the adapter's `POST /encode` endpoint:
/// {text, mode} -> {vector, dim, model_tag}.
class HttpEncoder : public Encoder {
public:
    explicit HttpEncoder(std::string base_url);
    Encoding encode(const std::string& text, EncodeMode mode) override;

private:
    std::string base_url_;
};

struct RegistryEntry {
    std::string name;
    std::filesystem::path path;
    std::optional<int> embedding_dim;
    std::size_t doc_count = 0;
    std::size_t statement_count = 0;
    std::string ingested_at;

    friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

nlohmann::json to_json(const RegistryEntry& entry);

/// Named corpora persisted under one root directory, one subdirectory each.
/// Loaded corpora are immutable snapshots shared with readers.
class CorpusRegistry {
public:
    /// Rebuilds the registry from whatever is already on disk under `root`.
    explicit CorpusRegistry(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    std::vector<RegistryEntry> entries() const;
    std::optional<RegistryEntry> entry(const std::string& name) const;
    /// Throws Error(not_found).
    std::shared_ptr<const Corpus> corpus(const std::string& name) const;

    /// Validates and persists. Throws Error(validation_failed) or
    /// Error(conflict) when the name exists and overwrite is false.
    RegistryEntry ingest(const std::string& name, Corpus corpus, bool overwrite);

    /// Writes a derived artifact (records, clusters, ...) into the corpus
    /// directory, serialized with ingest for the same name.
    void write_artifact(const std::string& name, const std::string& filename, const std::string& content);

    static bool valid_name(const std::string& name);

private:
    std::mutex& writer_lock(const std::string& name);

    struct Slot {
        RegistryEntry entry;
        std::shared_ptr<const Corpus> corpus;
    };

    std::filesystem::path root_;
    mutable std::shared_mutex map_mutex_;
    std::map<std::string, Slot> slots_;
    std::mutex writer_locks_mutex_;
    std::map<std::string, std::unique_ptr<std::mutex>> writer_locks_;
};

struct Response {
    int status = 200;
    nlohmann::json body;
};

/// Request handling shared by the HTTP server and tests. Every handler
/// returns a structured document carrying schema_version; failures carry
/// {"error": {"code", "message", ...}}.
class Service {
public:
    explicit Service(CorpusRegistry& registry, std::shared_ptr<Encoder> encoder = nullptr);

    Response handle(const std::string& method, const std::string& path, const std::string& body);

    nlohmann::json ingest(const nlohmann::json& request);
    nlohmann::json list_corpora() const;
    nlohmann::json get_corpus(const std::string& name) const;
    nlohmann::json compare(const nlohmann::json& request) const;
    nlohmann::json search(const nlohmann::json& request) const;
    nlohmann::json parse(const nlohmann::json& request);
    nlohmann::json cluster(const nlohmann::json& request);
    nlohmann::json network(const nlohmann::json& request);
    nlohmann::json evaluate(const nlohmann::json& request);

private:
    CorpusRegistry& registry_;
    std::shared_ptr<Encoder> encoder_;
};

int http_status(ErrorCode code);
nlohmann::json error_body(const Error& error);

/// Thin cpp-httplib front end over Service, mounted at /api/v1.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds to `port` (0 picks a free port) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void serve();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace igw
