#include "igw/semantic.hpp"

#include "igw/text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <numeric>

namespace igw {

Eigen::MatrixXd embedding_matrix(const Corpus& corpus) {
    const Eigen::Index dim = corpus.embedding_dim.value_or(0);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(corpus.docs.size()), dim);
    for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
        const auto& doc = corpus.docs[i];
        if (!doc.embedding) {
            throw Error(ErrorCode::failed_precondition,
                        "corpus '" + corpus.name + "': doc '" + doc.id + "' has no embedding");
        }
        if (doc.embedding->size() != dim) {
            throw Error(ErrorCode::invalid_argument, "corpus '" + corpus.name + "': doc '" + doc.id +
                                                         "' embedding does not match the corpus dimension");
        }
        m.row(static_cast<Eigen::Index>(i)) = doc.embedding->transpose();
    }
    return m;
}

std::vector<SimilarityPair> compare_corpora(const Corpus& a, const Corpus& b) {
    const Eigen::MatrixXd ea = embedding_matrix(a);
    const Eigen::MatrixXd eb = embedding_matrix(b);
    std::vector<SimilarityPair> pairs;
    if (a.docs.empty() || b.docs.empty()) return pairs;
    if (ea.cols() != eb.cols()) {
        throw Error(ErrorCode::invalid_argument, "compare: embedding dimensions differ (" +
                                                     std::to_string(ea.cols()) + " vs " +
                                                     std::to_string(eb.cols()) + ")");
    }
    const Eigen::MatrixXd scores = cosine_matrix(ea, eb);
    pairs.reserve(static_cast<std::size_t>(scores.size()));
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        for (Eigen::Index j = 0; j < scores.cols(); ++j) {
            pairs.push_back({a.docs[static_cast<std::size_t>(i)].id, b.docs[static_cast<std::size_t>(j)].id,
                             scores(i, j)});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const SimilarityPair& x, const SimilarityPair& y) {
        if (x.score != y.score) return x.score > y.score;
        if (x.doc_a != y.doc_a) return x.doc_a < y.doc_a;
        return x.doc_b < y.doc_b;
    });
    return pairs;
}

const char* to_string(Relevance relevance) { return relevance == Relevance::dot ? "dot" : "cosine"; }

Relevance parse_relevance(const std::string& text) {
    if (text == "cosine") return Relevance::cosine;
    if (text == "dot") return Relevance::dot;
    throw Error(ErrorCode::invalid_argument, "unknown relevance function '" + text + "'");
}

std::vector<SearchHit> search(const Eigen::VectorXd& query, const Corpus& corpus, std::size_t k,
                              Relevance relevance) {
    if (k == 0) return {};
    const Eigen::MatrixXd docs = embedding_matrix(corpus);
    if (query.size() != docs.cols()) {
        throw Error(ErrorCode::invalid_argument, "search: query dimension " + std::to_string(query.size()) +
                                                     " does not match corpus dimension " +
                                                     std::to_string(docs.cols()));
    }
    Eigen::VectorXd scores;
    if (relevance == Relevance::cosine) {
        if (query.norm() == 0.0) throw Error(ErrorCode::invalid_argument, "search: zero-norm query");
        if (docs.rows() > 0) {
            scores = (unit_rows(docs) * query.normalized()).cwiseMax(-1.0).cwiseMin(1.0);
        }
    } else {
        scores = docs * query;
    }

    std::vector<SearchHit> hits;
    hits.reserve(corpus.docs.size());
    for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
        hits.push_back({corpus.docs[i].id, scores(static_cast<Eigen::Index>(i))});
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& x, const SearchHit& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.doc_id < y.doc_id;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

std::string Cluster::label(std::size_t k) const {
    std::string out;
    for (std::size_t i = 0; i < top_terms.size() && i < k; ++i) {
        if (i) out += '/';
        out += top_terms[i].first;
    }
    return out;
}

int Clustering::cluster_of(const std::string& member) const {
    for (const auto& c : clusters) {
        if (std::find(c.members.begin(), c.members.end(), member) != c.members.end()) return c.id;
    }
    return kNoiseCluster;
}

const Cluster* Clustering::find(int id) const {
    for (const auto& c : clusters) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

namespace {

using Groups = std::vector<std::vector<std::size_t>>;

// Average-linkage agglomeration on a precomputed distance matrix. Merges
// the closest active pair (lowest indices on ties) until it exceeds the
// threshold. Returns member index lists.
Groups agglomerate(const Eigen::MatrixXd& distance, double threshold) {
    const Eigen::Index n = distance.rows();
    Eigen::MatrixXd d = distance;
    std::vector<bool> active(static_cast<std::size_t>(n), true);
    Groups groups(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) groups[static_cast<std::size_t>(i)] = {static_cast<std::size_t>(i)};

    for (;;) {
        double best = std::numeric_limits<double>::infinity();
        Eigen::Index bi = -1, bj = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!active[static_cast<std::size_t>(i)]) continue;
            for (Eigen::Index j = i + 1; j < n; ++j) {
                if (!active[static_cast<std::size_t>(j)]) continue;
                if (d(i, j) < best) {
                    best = d(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi < 0 || best > threshold) break;

        auto& gi = groups[static_cast<std::size_t>(bi)];
        auto& gj = groups[static_cast<std::size_t>(bj)];
        const double wi = static_cast<double>(gi.size());
        const double wj = static_cast<double>(gj.size());
        for (Eigen::Index k = 0; k < n; ++k) {
            if (!active[static_cast<std::size_t>(k)] || k == bi || k == bj) continue;
            const double merged = (wi * d(bi, k) + wj * d(bj, k)) / (wi + wj);
            d(bi, k) = merged;
            d(k, bi) = merged;
        }
        gi.insert(gi.end(), gj.begin(), gj.end());
        gj.clear();
        active[static_cast<std::size_t>(bj)] = false;
    }

    Groups out;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (active[i]) {
            std::sort(groups[i].begin(), groups[i].end());
            out.push_back(std::move(groups[i]));
        }
    }
    return out;
}

Eigen::VectorXd centroid_of(const std::vector<const ClusterItem*>& sorted, const std::vector<std::size_t>& group) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(sorted.front()->vector.size());
    for (std::size_t idx : group) sum += sorted[idx]->vector;
    return sum / static_cast<double>(group.size());
}

Clustering assemble(const std::vector<const ClusterItem*>& sorted, Groups groups, std::size_t min_size) {
    Clustering out;
    Groups kept;
    for (auto& g : groups) {
        if (g.size() >= min_size) {
            kept.push_back(std::move(g));
        } else {
            for (std::size_t idx : g) out.noise.push_back(sorted[idx]->id);
        }
    }
    // Larger clusters first; groups are index-sorted and indices follow id order.
    std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() > y.size();
        return x.front() < y.front();
    });
    for (std::size_t c = 0; c < kept.size(); ++c) {
        Cluster cluster;
        cluster.id = static_cast<int>(c);
        for (std::size_t idx : kept[c]) cluster.members.push_back(sorted[idx]->id);
        cluster.centroid = centroid_of(sorted, kept[c]);
        out.clusters.push_back(std::move(cluster));
    }
    std::sort(out.noise.begin(), out.noise.end());
    return out;
}

double safe_cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    if (u.norm() == 0.0 || v.norm() == 0.0) return 0.0;
    return cosine(u, v);
}

}  // namespace

Clustering cluster_components(std::span<const ClusterItem> items, const ClusterOptions& options) {
    if (options.min_cluster_size < 1) {
        throw Error(ErrorCode::invalid_argument, "min_cluster_size must be at least 1");
    }
    if (items.empty()) return {};

    std::vector<const ClusterItem*> sorted;
    sorted.reserve(items.size());
    for (const auto& item : items) sorted.push_back(&item);
    std::sort(sorted.begin(), sorted.end(), [](const ClusterItem* a, const ClusterItem* b) {
        if (a->id != b->id) return a->id < b->id;
        return a->text < b->text;
    });

    const Eigen::Index dim = sorted.front()->vector.size();
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(sorted.size()), dim);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i]->vector.size() != dim) {
            throw Error(ErrorCode::invalid_argument, "cluster: item '" + sorted[i]->id + "' has dimension " +
                                                         std::to_string(sorted[i]->vector.size()) + ", expected " +
                                                         std::to_string(dim));
        }
        rows.row(static_cast<Eigen::Index>(i)) = sorted[i]->vector.transpose();
    }
    const Eigen::MatrixXd unit = unit_rows(rows);
    const Eigen::MatrixXd distance = (Eigen::MatrixXd::Ones(unit.rows(), unit.rows()) - unit * unit.transpose())
                                         .cwiseMax(0.0);

    Groups groups = agglomerate(distance, options.merge_threshold);
    Clustering result = assemble(sorted, groups, options.min_cluster_size);

    if (options.consistency_margin > 0.0 && result.clusters.size() > 1) {
        const auto offenders = centroid_inconsistencies(result, items, options.consistency_margin);
        if (!offenders.empty()) {
            const std::set<std::string> drop(offenders.begin(), offenders.end());
            Groups pruned;
            for (auto& g : groups) {
                std::vector<std::size_t> keep;
                for (std::size_t idx : g) {
                    if (drop.count(sorted[idx]->id)) {
                        pruned.push_back({idx});
                    } else {
                        keep.push_back(idx);
                    }
                }
                if (!keep.empty()) pruned.push_back(std::move(keep));
            }
            result = assemble(sorted, std::move(pruned), options.min_cluster_size);
        }
    }
    return result;
}

std::vector<std::string> centroid_inconsistencies(const Clustering& clustering, std::span<const ClusterItem> items,
                                                  double margin) {
    std::map<std::string, const ClusterItem*> by_id;
    for (const auto& item : items) by_id.emplace(item.id, &item);
    std::vector<std::string> out;
    for (const auto& cluster : clustering.clusters) {
        for (const auto& member : cluster.members) {
            auto it = by_id.find(member);
            if (it == by_id.end()) continue;
            const double own = safe_cosine(it->second->vector, cluster.centroid);
            for (const auto& other : clustering.clusters) {
                if (other.id == cluster.id) continue;
                if (safe_cosine(it->second->vector, other.centroid) > own + margin) {
                    out.push_back(member);
                    break;
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::pair<std::string, double>>> class_tfidf(
    const std::vector<std::vector<std::string>>& class_texts) {
    const std::size_t n = class_texts.size();
    std::vector<std::map<std::string, int>> freq(n);
    std::vector<int> words(n, 0);
    std::map<std::string, int> df;
    for (std::size_t c = 0; c < n; ++c) {
        for (const auto& t : class_texts[c]) {
            for (auto& term : text::terms(t)) {
                if (text::is_stopword(term)) continue;
                ++freq[c][term];
                ++words[c];
            }
        }
        for (const auto& [term, count] : freq[c]) ++df[term];
    }

    std::vector<std::vector<std::pair<std::string, double>>> out(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (const auto& [term, count] : freq[c]) {
            const double tf = static_cast<double>(count) / static_cast<double>(words[c]);
            const double idf = std::log(1.0 + static_cast<double>(n) / static_cast<double>(df[term]));
            out[c].emplace_back(term, tf * idf);
        }
        std::sort(out[c].begin(), out[c].end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
    }
    return out;
}

void label_clusters(Clustering& clustering, std::span<const ClusterItem> items, std::size_t k) {
    std::map<std::string, const std::string*> text_of;
    for (const auto& item : items) text_of.emplace(item.id, &item.text);

    std::vector<std::vector<std::string>> classes;
    for (const auto& cluster : clustering.clusters) {
        std::vector<std::string> texts;
        for (const auto& m : cluster.members) {
            if (auto it = text_of.find(m); it != text_of.end()) texts.push_back(*it->second);
        }
        classes.push_back(std::move(texts));
    }
    auto scores = class_tfidf(classes);
    for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
        auto& terms = scores[c];
        if (terms.size() > k) terms.resize(k);
        clustering.clusters[c].top_terms = std::move(terms);
    }
}

nlohmann::json to_json(const SimilarityPair& pair, std::size_t rank) {
    return {{"doc_a", pair.doc_a}, {"doc_b", pair.doc_b}, {"rank", rank}, {"score", pair.score}};
}

nlohmann::json to_json(const Cluster& cluster) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [term, score] : cluster.top_terms) terms.push_back({term, score});
    nlohmann::json centroid = nlohmann::json::array();
    for (Eigen::Index i = 0; i < cluster.centroid.size(); ++i) centroid.push_back(cluster.centroid(i));
    return {{"centroid", std::move(centroid)},
            {"id", cluster.id},
            {"members", cluster.members},
            {"top_terms", std::move(terms)}};
}

Cluster cluster_from_json(const nlohmann::json& j) {
    Cluster c;
    c.id = j.at("id").get<int>();
    c.members = j.at("members").get<std::vector<std::string>>();
    for (const auto& t : j.at("top_terms")) c.top_terms.emplace_back(t.at(0).get<std::string>(), t.at(1).get<double>());
    if (auto it = j.find("centroid"); it != j.end() && it->is_array()) {
        c.centroid.resize(static_cast<Eigen::Index>(it->size()));
        for (std::size_t i = 0; i < it->size(); ++i) c.centroid(static_cast<Eigen::Index>(i)) = (*it)[i].get<double>();
    }
    return c;
}

std::vector<nlohmann::json> clustering_to_jsonl(const Clustering& clustering) {
    std::vector<nlohmann::json> out;
    for (const auto& c : clustering.clusters) out.push_back(to_json(c));
    if (!clustering.noise.empty()) {
        Cluster noise;
        noise.id = kNoiseCluster;
        noise.members = clustering.noise;
        out.push_back(to_json(noise));
    }
    return out;
}

Clustering clustering_from_jsonl(const std::vector<nlohmann::json>& records) {
    Clustering out;
    for (const auto& r : records) {
        Cluster c = cluster_from_json(r);
        if (c.id == kNoiseCluster) {
            out.noise.insert(out.noise.end(), c.members.begin(), c.members.end());
        } else {
            out.clusters.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace igw
