#include "igw/graph.hpp"

#include "igw/text.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace igw {

std::string attribute_component_id(const std::string& statement_id) { return statement_id + "#A"; }
std::string object_component_id(const std::string& statement_id) { return statement_id + "#B"; }

std::string GraphNode::label() const {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += '/';
        out += terms[i];
    }
    return out;
}

ConstituentRole parse_constituent_role(const std::string& text) {
    if (text == "attribute") return ConstituentRole::attribute;
    if (text == "object") return ConstituentRole::object;
    if (text == "both") return ConstituentRole::both;
    throw Error(ErrorCode::invalid_argument, "unknown constituent role '" + text + "'");
}

const char* to_string(ConstituentRole role) {
    switch (role) {
        case ConstituentRole::attribute: return "attribute";
        case ConstituentRole::object: return "object";
        case ConstituentRole::both: return "both";
    }
    return "both";
}

std::vector<ComponentText> component_texts(const std::vector<AbdicoRecord>& records, ConstituentRole role) {
    std::vector<ComponentText> out;
    for (const auto& r : records) {
        if (role != ConstituentRole::object && r.attribute) {
            out.push_back({attribute_component_id(r.statement_id), r.attribute->text});
        }
        if (role != ConstituentRole::attribute && r.object) {
            out.push_back({object_component_id(r.statement_id), r.object->text});
        }
    }
    return out;
}

double edge_weight(int policy_count) { return std::log(1.0 + static_cast<double>(policy_count)); }

namespace {

std::map<std::string, int> membership(const Clustering& clustering) {
    std::map<std::string, int> out;
    for (const auto& c : clustering.clusters) {
        for (const auto& m : c.members) out.emplace(m, c.id);
    }
    return out;
}

}  // namespace

InstitutionalGraph build_graph(const std::vector<AbdicoRecord>& records, const Clustering& attributes,
                               const Clustering& objects) {
    const auto attr_of = membership(attributes);
    const auto obj_of = membership(objects);

    std::map<std::pair<int, int>, GraphEdge> edges;
    std::map<int, std::set<std::string>> touching;
    for (const auto& r : records) {
        if (!r.attribute || !r.object) continue;
        auto a = attr_of.find(attribute_component_id(r.statement_id));
        auto o = obj_of.find(object_component_id(r.statement_id));
        if (a == attr_of.end() || o == obj_of.end()) continue;

        auto& edge = edges[{a->second, o->second}];
        edge.source = a->second;
        edge.target = o->second;
        ++edge.policy_count;
        ++edge.category_counts[r.category];
        edge.statements.push_back(r.statement_id);
        touching[a->second].insert(r.statement_id);
        touching[o->second].insert(r.statement_id);
    }

    InstitutionalGraph graph;
    for (const auto& [id, statements] : touching) {
        GraphNode node;
        node.cluster = id;
        node.member_count = static_cast<int>(statements.size());
        const Cluster* c = attributes.find(id);
        if (!c || c->top_terms.empty()) {
            if (const Cluster* alt = objects.find(id)) c = alt;
        }
        if (c) {
            for (std::size_t i = 0; i < c->top_terms.size() && i < 4; ++i) node.terms.push_back(c->top_terms[i].first);
        }
        graph.nodes.push_back(std::move(node));
    }
    for (auto& [key, edge] : edges) {
        edge.weight = edge_weight(edge.policy_count);
        graph.edges.push_back(std::move(edge));
    }
    return graph;
}

GraphFormat parse_graph_format(const std::string& text) {
    if (text == "json-graph" || text == "json") return GraphFormat::json_graph;
    if (text == "dot-text" || text == "dot") return GraphFormat::dot_text;
    throw Error(ErrorCode::invalid_argument, "unknown graph format '" + text + "'");
}

nlohmann::json graph_to_json(const InstitutionalGraph& graph) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : graph.nodes) {
        nodes.push_back({{"id", n.cluster}, {"label", n.label()}, {"member_count", n.member_count}, {"terms", n.terms}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : graph.edges) {
        nlohmann::json counts = nlohmann::json::object();
        for (const auto& [cat, count] : e.category_counts) counts[to_string(cat)] = count;
        edges.push_back({{"category_counts", std::move(counts)},
                         {"policy_count", e.policy_count},
                         {"source", e.source},
                         {"statements", e.statements},
                         {"target", e.target},
                         {"weight", e.weight}});
    }
    return {{"directed", true}, {"edges", std::move(edges)}, {"nodes", std::move(nodes)}};
}

InstitutionalGraph graph_from_json(const nlohmann::json& j) {
    InstitutionalGraph g;
    for (const auto& n : j.at("nodes")) {
        g.nodes.push_back({n.at("id").get<int>(), n.at("terms").get<std::vector<std::string>>(),
                           n.at("member_count").get<int>()});
    }
    for (const auto& e : j.at("edges")) {
        GraphEdge edge;
        edge.source = e.at("source").get<int>();
        edge.target = e.at("target").get<int>();
        edge.policy_count = e.at("policy_count").get<int>();
        edge.weight = e.at("weight").get<double>();
        for (const auto& [name, count] : e.at("category_counts").items()) {
            auto cat = parse_category(name);
            if (!cat) throw Error(ErrorCode::malformed_record, "unknown category '" + name + "'");
            edge.category_counts[*cat] = count.get<int>();
        }
        edge.statements = e.at("statements").get<std::vector<std::string>>();
        g.edges.push_back(std::move(edge));
    }
    return g;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string number(double v) { return nlohmann::json(v).dump(); }

}  // namespace

std::string export_graph(const InstitutionalGraph& graph, GraphFormat format) {
    if (format == GraphFormat::json_graph) return graph_to_json(graph).dump(2) + "\n";

    std::ostringstream out;
    out << "digraph institutions {\n";
    for (const auto& n : graph.nodes) {
        out << "  c" << n.cluster << " [label=\"" << dot_escape(n.label()) << "\", members=" << n.member_count
            << "];\n";
    }
    for (const auto& e : graph.edges) {
        out << "  c" << e.source << " -> c" << e.target << " [penwidth=" << number(e.weight)
            << ", weight=" << number(e.weight) << ", policy_count=" << e.policy_count;
        for (const auto& [cat, count] : e.category_counts) out << ", " << text::to_lower(to_string(cat)) << "=" << count;
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace igw
