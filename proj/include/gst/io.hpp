#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gst/graph.hpp"
#include "gst/stats.hpp"
#include "gst/types.hpp"

namespace gst {

struct VertexRecord {
    std::string external_id;
    double x = 0.0;
    double y = 0.0;
    std::string keyword;
};

struct EdgeRecord {
    std::string u;
    std::string v;
};

struct LoadReport {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t dropped_duplicate_edges = 0;
    std::size_t dropped_self_loops = 0;
};

// Vertex file: TSV `external_id <TAB> x <TAB> y <TAB> keyword`, '#' comments.
// Edge file: `u <TAB> v`. External ids are remapped to dense ids by
// lexicographic order, keywords interned the same way, so loading is
// insensitive to line order.
GeoSocialGraph load_graph(const std::string& vertex_path, const std::string& edge_path,
                          LoadReport* report = nullptr);

GeoSocialGraph build_graph(std::vector<VertexRecord> vertices,
                           const std::vector<EdgeRecord>& edges, LoadReport* report = nullptr);

struct QuerySpec {
    double lx = 0.0;
    double ly = 0.0;
    std::vector<std::string> keywords;
    int rho = 1;
    int c = 2;
    double delta = 2.0;
};

/// Validates and interns a query against the graph's keyword dictionary.
Query load_query(const GeoSocialGraph& g, const QuerySpec& spec);

struct SearchResult {
    std::optional<Group> group;
    QueryStats stats;
    bool with_stats = true;
};

enum class OutputFormat { json, tsv };

/// Deterministic, byte-stable encoding of a result; a missing group encodes
/// an explicit {"found": false} record.
std::string emit_result(const SearchResult& r, OutputFormat format, const GeoSocialGraph& g);

}  // namespace gst
