#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gst/types.hpp"

namespace gst {

/// Immutable attributed graph: sorted adjacency, one coordinate pair and one
/// keyword per vertex. Safe to share across concurrent query executions.
class GeoSocialGraph {
  public:
    GeoSocialGraph() = default;

    // Assembles a graph from already remapped parts. Symmetrizes, sorts and
    // deduplicates the adjacency; rejects self loops and keyword ids outside
    // the dictionary.
    static GeoSocialGraph from_parts(std::vector<VertexAttr> attrs,
                                     const std::vector<Edge>& edges,
                                     std::vector<std::string> keyword_names,
                                     std::vector<std::string> external_ids = {});

    std::size_t vertex_count() const { return attrs_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t keyword_count() const { return keyword_names_.size(); }

    const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
    const AdjacencyList& adjacency() const { return adj_; }
    const VertexAttr& attr(VertexId v) const { return attrs_[v]; }
    Point position(VertexId v) const { return {attrs_[v].x, attrs_[v].y}; }
    KeywordId keyword_of(VertexId v) const { return attrs_[v].keyword; }

    KeywordId keyword_id(const std::string& name) const;  // kNoKeyword if absent
    const std::string& keyword_name(KeywordId k) const { return keyword_names_[k]; }
    const std::string& external_id(VertexId v) const { return external_ids_[v]; }
    bool has_edge(VertexId u, VertexId v) const;

  private:
    AdjacencyList adj_;
    std::vector<VertexAttr> attrs_;
    std::vector<std::string> keyword_names_;
    std::unordered_map<std::string, KeywordId> keyword_ids_;
    std::vector<std::string> external_ids_;
    std::size_t edge_count_ = 0;
};

double squared_distance(Point a, Point b);
double euclidean_distance(Point a, Point b);

/// Distance from the query location to one vertex.
double distance(Point location, VertexId v, const GeoSocialGraph& g);

/// Max member distance to the query location; throws EmptyGroup on an empty set.
double group_distance(Point location, std::span<const VertexId> members,
                      const GeoSocialGraph& g);

/// Final assertion on every returned result: the group's explicit edge set is
/// connected and covers all member vertices, every edge closes at least
/// trussness-2 triangles inside the group, and every query keyword is carried
/// by at least min_keyword_count members.
bool validate_group(const Group& s, const Query& q, const GeoSocialGraph& g);

// Query-scoped caches shared by the search stages.
struct QueryContext {
    const GeoSocialGraph* graph = nullptr;
    Query query;
    std::vector<double> sqdist;       // per vertex, squared distance to the query location
    std::vector<std::int16_t> phi_index;  // per vertex: index into query.keywords, or -1

    static QueryContext make(const GeoSocialGraph& g, const Query& q);
};

}  // namespace gst
