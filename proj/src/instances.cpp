#include "gst/instances.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace gst {

std::uint64_t Rng::next() {
    // splitmix64
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) { return bound ? next() % bound : 0; }

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

GeoSocialGraph random_graph(Rng& rng, const InstanceOptions& opt) {
    const std::size_t n =
        opt.min_vertices + rng.below(opt.max_vertices - opt.min_vertices + 1);
    const double p = rng.uniform(opt.min_edge_prob, opt.max_edge_prob);
    const int kw_count =
        opt.min_keywords + static_cast<int>(rng.below(opt.max_keywords - opt.min_keywords + 1));

    std::vector<std::string> keyword_names;
    for (int k = 0; k < kw_count; ++k) keyword_names.push_back("k" + std::to_string(k + 1));

    std::vector<VertexAttr> attrs;
    attrs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        VertexAttr a;
        a.x = rng.uniform(0.0, opt.coord_span);
        a.y = rng.uniform(0.0, opt.coord_span);
        a.keyword = static_cast<KeywordId>(rng.below(kw_count));
        attrs.push_back(a);
    }
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.unit() < p) edges.emplace_back(static_cast<VertexId>(u),
                                                   static_cast<VertexId>(v));
    return GeoSocialGraph::from_parts(std::move(attrs), edges, std::move(keyword_names));
}

Query random_query(Rng& rng, const GeoSocialGraph& g, const QueryOptions& opt) {
    Query q;
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        Point pt = g.position(static_cast<VertexId>(v));
        if (v == 0 || pt.x < min_x) min_x = pt.x;
        if (v == 0 || pt.x > max_x) max_x = pt.x;
        if (v == 0 || pt.y < min_y) min_y = pt.y;
        if (v == 0 || pt.y > max_y) max_y = pt.y;
    }
    q.location = {rng.uniform(min_x, max_x), rng.uniform(min_y, max_y)};
    q.trussness = opt.min_c + static_cast<int>(rng.below(opt.max_c - opt.min_c + 1));
    q.min_keyword_count = opt.min_rho + static_cast<int>(rng.below(opt.max_rho - opt.min_rho + 1));
    q.growth_factor = opt.delta;

    const int universe = static_cast<int>(g.keyword_count());
    int phi = opt.min_phi + static_cast<int>(rng.below(opt.max_phi - opt.min_phi + 1));
    phi = std::min(phi, universe);
    std::vector<KeywordId> pool(universe);
    for (int k = 0; k < universe; ++k) pool[k] = k;
    for (int k = 0; k < phi; ++k) {
        std::size_t pick = k + rng.below(pool.size() - k);
        std::swap(pool[k], pool[pick]);
    }
    q.keywords.assign(pool.begin(), pool.begin() + phi);
    std::sort(q.keywords.begin(), q.keywords.end());
    return q;
}

std::string dump_instance(const GeoSocialGraph& g, const Query& q) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto& a = g.attr(static_cast<VertexId>(v));
        verts.push_back({{"id", v},
                         {"x", a.x},
                         {"y", a.y},
                         {"keyword", g.keyword_name(a.keyword)}});
    }
    j["vertices"] = verts;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (VertexId w : g.neighbors(static_cast<VertexId>(v)))
            if (v < w) edges.push_back({v, w});
    j["edges"] = edges;
    std::vector<std::string> kws;
    for (KeywordId k : q.keywords) kws.push_back(g.keyword_name(k));
    j["query"] = {{"lambda", {q.location.x, q.location.y}},
                  {"keywords", kws},
                  {"rho", q.min_keyword_count},
                  {"c", q.trussness},
                  {"delta", q.growth_factor}};
    return j.dump();
}

}  // namespace gst
