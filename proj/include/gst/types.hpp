#pragma once

#include <cstdint>
#include <vector>

namespace gst {

using VertexId = std::uint32_t;
using KeywordId = std::int32_t;

constexpr KeywordId kNoKeyword = -1;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Undirected edge, normalized so that u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    Edge() = default;
    Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
};

inline std::uint64_t edge_key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline std::uint64_t edge_key(const Edge& e) { return edge_key(e.u, e.v); }

struct VertexAttr {
    double x = 0.0;
    double y = 0.0;
    KeywordId keyword = kNoKeyword;
};

// Per-vertex sorted neighbor lists.
using AdjacencyList = std::vector<std::vector<VertexId>>;

struct Query {
    Point location;                     // query point the group distance is measured from
    std::vector<KeywordId> keywords;    // distinct, sorted; non-empty
    int min_keyword_count = 1;          // >= 1 members required per query keyword
    int trussness = 2;                  // >= 2; per-edge triangle support must reach trussness - 2
    double growth_factor = 2.0;         // > 1; edge-count ratio between expansion rounds
};

// A group answer: explicit vertex and edge sets plus the max member distance
// to the query location.
struct Group {
    std::vector<VertexId> vertices;     // sorted ascending
    std::vector<Edge> edges;            // sorted, normalized
    double dist = 0.0;
};

}  // namespace gst
