#pragma once

// Shared instances for the module tests. The six-vertex "quest" family
// places vertices on a line at increasing distance from the origin with one
// role keyword each, so every ordering and counter can be worked out by hand.

#include <string>
#include <vector>

#include "gst/graph.hpp"
#include "gst/types.hpp"

namespace fixtures {

using namespace gst;

// ids after lexicographic remapping of the names d,e,f,g,h,i
inline constexpr VertexId D = 0, E = 1, F = 2, G = 3, H = 4, I = 5;
// interned keyword ids
inline constexpr KeywordId K1 = 0, K2 = 1, K3 = 2;

inline GeoSocialGraph make_graph(std::vector<VertexAttr> attrs, std::vector<Edge> edges,
                                 int keyword_count = 3,
                                 std::vector<std::string> external_ids = {}) {
    std::vector<std::string> names;
    for (int k = 0; k < keyword_count; ++k) names.push_back("k" + std::to_string(k + 1));
    return GeoSocialGraph::from_parts(std::move(attrs), edges, std::move(names),
                                      std::move(external_ids));
}

inline std::vector<std::string> quest_names() { return {"d", "e", "f", "g", "h", "i"}; }

inline std::vector<VertexAttr> quest_attrs() {
    // distances to the origin: g=1.0, d=1.2, e=1.5, i=2.0, h=2.5, f=3.0
    return {
        {1.2, 0.0, K1},  // d
        {1.5, 0.0, K1},  // e
        {3.0, 0.0, K3},  // f
        {1.0, 0.0, K2},  // g
        {2.5, 0.0, K3},  // h
        {2.0, 0.0, K2},  // i
    };
}

// Sparse chain: the union-find stream satisfies the keyword minimums exactly
// when the edge (f,h) is consumed, with member set {d,e,f,g,h,i}.
inline GeoSocialGraph quest_path_graph() {
    return make_graph(quest_attrs(), {{G, D}, {D, E}, {E, I}, {I, H}, {F, H}, {F, I}}, 3,
                      quest_names());
}

// Dense variant: a five-clique minus (g,d) on {g,d,e,i,h}, plus f attached
// to {e,h,i} (and optionally g). The base subgraph is a 4-truss; adding f
// closes a four-clique on {e,f,h,i}.
inline GeoSocialGraph quest_truss_graph(bool with_fg = false) {
    std::vector<Edge> edges = {{D, E}, {D, H}, {D, I}, {E, G}, {E, H},
                               {E, I}, {G, H}, {G, I}, {H, I},
                               {E, F}, {F, H}, {F, I}};
    if (with_fg) edges.push_back({F, G});
    return make_graph(quest_attrs(), edges, 3, quest_names());
}

inline Query quest_query(int rho = 2, std::vector<KeywordId> keywords = {K1, K2, K3}) {
    Query q;
    q.location = {0.0, 0.0};
    q.keywords = std::move(keywords);
    q.min_keyword_count = rho;
    q.trussness = 4;
    q.growth_factor = 2.0;
    return q;
}

// K4 on vertices 0..3, all at distinct distances, keywords alternating k1/k2.
inline GeoSocialGraph k4_graph() {
    std::vector<VertexAttr> attrs = {
        {1.0, 0.0, K1}, {2.0, 0.0, K1}, {3.0, 0.0, K2}, {4.0, 0.0, K2}};
    return make_graph(attrs, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, 2);
}

}  // namespace fixtures
