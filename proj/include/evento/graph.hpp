#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "evento/dates.hpp"
#include "evento/extraction.hpp"
#include "evento/resources.hpp"

namespace evento {

struct EventNode {
    std::string id;
    std::string event_class;
    std::string doc_id;
    std::string sentence_id;
    std::string anchor_text;
    Span anchor_span;
    Confidence confidence = Confidence::Low;
    std::optional<NormalizedDate> date; // from a normalizable DATE argument
};

/// Linked entities appear once per entity id; unlinked ones once per
/// mention.
struct EntityNode {
    std::string id;
    bool linked = false;
    std::string entity_id; // linked only
    std::string label;
    std::string type; // PER/LOC/ORG or a semantic type
    std::string doc_id;      // unlinked only
    std::string sentence_id; // unlinked only
    std::optional<Span> span;
};

struct RoleEdge {
    std::string event_node;
    std::string entity_node;
    std::string role;
    std::string doc_id;
    std::string sentence_id;
};

struct QueryHit {
    std::string entity_node;
    /// (event node, doc, sentence) per satisfying edge.
    std::vector<std::tuple<std::string, std::string, std::string>> provenance;
};

/// Bipartite event-entity network with role-labeled, document-attributed
/// edges. Construction is single-writer; the built graph is immutable and
/// all queries are read-only.
class EventGraph {
public:
    /// One event node per mention; linked arguments share one entity node
    /// per entity id; role-less arguments are excluded; a normalizable DATE
    /// argument becomes the event node's date attribute. Gazetteers, when
    /// given, provide canonical labels for linked entities.
    static EventGraph build(const std::vector<EventMention>& mentions,
                            const Gazetteers* gazetteers = nullptr);

    const std::map<std::string, EventNode>& events() const { return events_; }
    const std::map<std::string, EntityNode>& entities() const { return entities_; }
    const std::vector<RoleEdge>& edges() const { return edges_; }

    /// Induced subgraph of nodes within `hops` edges of the entity's node.
    /// Throws QueryError for an unknown entity id.
    EventGraph ego_network(const std::string& entity_id, int hops) const;

    /// Induced subgraph of event nodes whose date intersects [from, to],
    /// plus their entity neighbors.
    EventGraph date_network(const NormalizedDate& from, const NormalizedDate& to) const;

    /// Entities with at least one edge satisfying all three constraints
    /// (empty set = wildcard), with per-edge provenance. Unknown labels are
    /// QueryErrors naming the label.
    std::vector<QueryHit> constrained_query(const std::set<std::string>& entity_types,
                                            const std::set<std::string>& event_classes,
                                            const std::set<std::string>& roles) const;

    /// Induced subgraph of edges whose document id is in `doc_ids`, plus
    /// endpoints.
    EventGraph document_subgraph(const std::set<std::string>& doc_ids) const;

    /// GEXF 1.2 static graph with deterministic node/edge ordering; two
    /// identical builds serialize byte-identically.
    void export_gexf(std::ostream& out) const;
    void export_gexf_file(const std::string& path) const;

    /// Deterministic JSON snapshot (sorted nodes/edges arrays).
    nlohmann::ordered_json to_json() const;
    static EventGraph from_json(const nlohmann::ordered_json& j);
    static EventGraph load_snapshot(const std::string& path);
    void save_snapshot(const std::string& path) const;

    size_t node_count() const { return events_.size() + entities_.size(); }

private:
    std::map<std::string, EventNode> events_;
    std::map<std::string, EntityNode> entities_;
    std::vector<RoleEdge> edges_; // sorted by (event, entity, role)

    void add_edge(RoleEdge e);
    void sort_edges();
    EventGraph induced(const std::set<std::string>& node_ids) const;
    friend struct GraphAccess;
};

} // namespace evento
