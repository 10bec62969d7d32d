#pragma once

#include "igw/error.hpp"
#include "igw/types.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace igw {

/// Cosine similarity of two dense vectors, clamped to [-1, 1].
/// Throws on dimension mismatch or a zero-norm operand.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
    using Scalar = typename DerivedA::Scalar;
    if (u.size() != v.size()) {
        throw Error(ErrorCode::invalid_argument, "cosine: dimension mismatch (" + std::to_string(u.size()) +
                                                     " vs " + std::to_string(v.size()) + ")");
    }
    const Scalar nu = u.norm();
    const Scalar nv = v.norm();
    if (nu == Scalar(0) || nv == Scalar(0)) {
        throw Error(ErrorCode::invalid_argument, "cosine: zero-norm vector");
    }
    const Scalar c = u.dot(v) / (nu * nv);
    return std::clamp(c, Scalar(-1), Scalar(1));
}

/// Copies `rows` into a matrix and scales every row to unit length.
/// Throws on a zero row.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> unit_rows(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& rows) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> norms = rows.rowwise().norm();
    if ((norms.array() == Scalar(0)).any()) {
        throw Error(ErrorCode::invalid_argument, "unit_rows: zero-norm vector");
    }
    return norms.cwiseInverse().asDiagonal() * rows;
}

/// Full cosine matrix between the rows of `a` and the rows of `b`.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cosine_matrix(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b) {
    if (a.cols() != b.cols()) {
        throw Error(ErrorCode::invalid_argument, "cosine_matrix: dimension mismatch");
    }
    return (unit_rows(a) * unit_rows(b).transpose()).cwiseMax(Scalar(-1)).cwiseMin(Scalar(1));
}

struct SimilarityPair {
    std::string doc_a;
    std::string doc_b;
    double score = 0.0;

    friend bool operator==(const SimilarityPair&, const SimilarityPair&) = default;
};

/// Stacks the corpus embeddings as rows (doc order). Throws
/// Error(failed_precondition) naming the first doc without an embedding.
Eigen::MatrixXd embedding_matrix(const Corpus& corpus);

/// Every |a| x |b| pair by cosine, descending, ties by (doc_a, doc_b).
std::vector<SimilarityPair> compare_corpora(const Corpus& a, const Corpus& b);

enum class Relevance { cosine, dot };
const char* to_string(Relevance relevance);
Relevance parse_relevance(const std::string& text);

struct SearchHit {
    std::string doc_id;
    double score = 0.0;

    friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

std::vector<SearchHit> search(const Eigen::VectorXd& query, const Corpus& corpus, std::size_t k,
                              Relevance relevance = Relevance::cosine);

struct ClusterItem {
    std::string id;
    std::string text;
    Eigen::VectorXd vector;
};

struct Cluster {
    int id = 0;  // -1 is reserved for noise
    std::vector<std::string> members;
    std::vector<std::pair<std::string, double>> top_terms;
    Eigen::VectorXd centroid;

    std::string label(std::size_t k = 4) const;
};

inline constexpr int kNoiseCluster = -1;

struct ClusterOptions {
    std::size_t min_cluster_size = 10;
    /// Average-linkage merges stop once the closest pair is farther than
    /// this cosine distance.
    double merge_threshold = 0.4;
    /// When > 0, members closer (by this cosine margin) to another
    /// cluster's centroid than to their own are demoted to noise.
    double consistency_margin = 0.0;
};

struct Clustering {
    std::vector<Cluster> clusters;
    std::vector<std::string> noise;

    /// Cluster id holding `member`, kNoiseCluster if none.
    int cluster_of(const std::string& member) const;
    const Cluster* find(int id) const;
};

/// Deterministic average-linkage agglomeration over cosine distance.
/// Input order does not matter: items are sorted by id first.
Clustering cluster_components(std::span<const ClusterItem> items, const ClusterOptions& options = {});

/// Members violating the centroid-consistency margin, across all clusters.
std::vector<std::string> centroid_inconsistencies(const Clustering& clustering,
                                                  std::span<const ClusterItem> items, double margin);

/// Class-based TF-IDF over one concatenated document per class:
/// score(t, c) = freq(t, c) / words(c) * ln(1 + N / df(t)). Stopwords are
/// excluded from both counts. Result rows are sorted by score descending,
/// then term ascending.
std::vector<std::vector<std::pair<std::string, double>>> class_tfidf(
    const std::vector<std::vector<std::string>>& class_texts);

/// Fills top_terms of every non-noise cluster with its top-k c-TF-IDF terms.
void label_clusters(Clustering& clustering, std::span<const ClusterItem> items, std::size_t k = 4);

nlohmann::json to_json(const SimilarityPair& pair, std::size_t rank);
nlohmann::json to_json(const Cluster& cluster);
Cluster cluster_from_json(const nlohmann::json& j);
/// One record per cluster, noise last with id -1.
std::vector<nlohmann::json> clustering_to_jsonl(const Clustering& clustering);
Clustering clustering_from_jsonl(const std::vector<nlohmann::json>& records);

}  // namespace igw
