#pragma once

#include "igw/abdico.hpp"
#include "igw/semantic.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace igw {

/// Component ids used when attributes and objects are clustered together.
std::string attribute_component_id(const std::string& statement_id);
std::string object_component_id(const std::string& statement_id);

enum class ConstituentRole { attribute, object, both };
ConstituentRole parse_constituent_role(const std::string& text);
const char* to_string(ConstituentRole role);

struct ComponentText {
    std::string id;  // attribute_component_id / object_component_id
    std::string text;
};

/// Explicit attribute and/or object constituents of the records, in record order.
std::vector<ComponentText> component_texts(const std::vector<AbdicoRecord>& records, ConstituentRole role);

struct GraphNode {
    int cluster = 0;
    std::vector<std::string> terms;
    int member_count = 0;

    std::string label() const;  // terms joined by "/"
    friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
    int source = 0;
    int target = 0;
    int policy_count = 0;
    double weight = 0.0;  // ln(1 + policy_count)
    std::map<Category, int> category_counts;
    std::vector<std::string> statements;

    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct InstitutionalGraph {
    std::vector<GraphNode> nodes;  // ascending cluster id
    std::vector<GraphEdge> edges;  // ascending (source, target)

    friend bool operator==(const InstitutionalGraph&, const InstitutionalGraph&) = default;
};

double edge_weight(int policy_count);

/// Aggregates attribute -> object edges between clusters. Records missing
/// an explicit attribute or object, or whose attribute/object is noise, are
/// dropped. `attributes` maps attribute_component_id(statement) to clusters,
/// `objects` maps object_component_id(statement); both share one id space
/// (pass the same clustering twice when constituents were pooled).
InstitutionalGraph build_graph(const std::vector<AbdicoRecord>& records, const Clustering& attributes,
                               const Clustering& objects);

enum class GraphFormat { json_graph, dot_text };
GraphFormat parse_graph_format(const std::string& text);

std::string export_graph(const InstitutionalGraph& graph, GraphFormat format);
nlohmann::json graph_to_json(const InstitutionalGraph& graph);
InstitutionalGraph graph_from_json(const nlohmann::json& j);

}  // namespace igw
