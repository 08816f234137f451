#include "gst/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gst/errors.hpp"

namespace gst {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "bad number '" + s + "'");
    }
}

bool skippable(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;  // blank
}

std::string trim_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

GeoSocialGraph build_graph(std::vector<VertexRecord> vertices,
                           const std::vector<EdgeRecord>& edges, LoadReport* report) {
    std::sort(vertices.begin(), vertices.end(),
              [](const VertexRecord& a, const VertexRecord& b) {
                  return a.external_id < b.external_id;
              });
    std::unordered_map<std::string, VertexId> id_of;
    id_of.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!id_of.emplace(vertices[i].external_id, static_cast<VertexId>(i)).second)
            throw DuplicateVertex(vertices[i].external_id);
    }

    std::set<std::string> keyword_pool;
    for (const auto& v : vertices) keyword_pool.insert(v.keyword);
    std::vector<std::string> keyword_names(keyword_pool.begin(), keyword_pool.end());
    std::unordered_map<std::string, KeywordId> kw_of;
    for (std::size_t k = 0; k < keyword_names.size(); ++k)
        kw_of.emplace(keyword_names[k], static_cast<KeywordId>(k));

    std::vector<VertexAttr> attrs;
    std::vector<std::string> ext_ids;
    attrs.reserve(vertices.size());
    for (const auto& v : vertices) {
        attrs.push_back({v.x, v.y, kw_of.at(v.keyword)});
        ext_ids.push_back(v.external_id);
    }

    LoadReport rep;
    rep.vertices = vertices.size();
    std::set<std::uint64_t> seen;
    std::vector<Edge> dense_edges;
    for (const auto& e : edges) {
        auto iu = id_of.find(e.u);
        if (iu == id_of.end()) throw DanglingEdge(e.u);
        auto iv = id_of.find(e.v);
        if (iv == id_of.end()) throw DanglingEdge(e.v);
        if (iu->second == iv->second) {
            ++rep.dropped_self_loops;
            continue;
        }
        if (!seen.insert(edge_key(iu->second, iv->second)).second) {
            ++rep.dropped_duplicate_edges;
            continue;
        }
        dense_edges.emplace_back(iu->second, iv->second);
    }
    rep.edges = dense_edges.size();
    if (report) *report = rep;
    return GeoSocialGraph::from_parts(std::move(attrs), dense_edges, std::move(keyword_names),
                                      std::move(ext_ids));
}

GeoSocialGraph load_graph(const std::string& vertex_path, const std::string& edge_path,
                          LoadReport* report) {
    std::ifstream vf(vertex_path);
    if (!vf) throw IoError("cannot open vertex file " + vertex_path);
    std::vector<VertexRecord> vertices;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(vf, line)) {
        ++line_no;
        line = trim_cr(line);
        if (skippable(line)) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 4) throw ParseError(line_no, "expected 4 tab-separated columns");
        if (cols[0].empty()) throw ParseError(line_no, "empty vertex id");
        if (cols[3].empty()) throw ParseError(line_no, "empty keyword");
        vertices.push_back(
            {cols[0], parse_double(cols[1], line_no), parse_double(cols[2], line_no), cols[3]});
    }

    std::ifstream ef(edge_path);
    if (!ef) throw IoError("cannot open edge file " + edge_path);
    std::vector<EdgeRecord> edges;
    line_no = 0;
    while (std::getline(ef, line)) {
        ++line_no;
        line = trim_cr(line);
        if (skippable(line)) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 2) throw ParseError(line_no, "expected 2 tab-separated columns");
        edges.push_back({cols[0], cols[1]});
    }
    return build_graph(std::move(vertices), edges, report);
}

Query load_query(const GeoSocialGraph& g, const QuerySpec& spec) {
    if (spec.rho < 1) throw InvalidParameter("rho", std::to_string(spec.rho));
    if (spec.c < 2) throw InvalidParameter("c", std::to_string(spec.c));
    if (!(spec.delta > 1.0)) throw InvalidParameter("delta", std::to_string(spec.delta));
    if (spec.keywords.empty()) throw InvalidParameter("keywords", "(empty)");

    Query q;
    q.location = {spec.lx, spec.ly};
    q.min_keyword_count = spec.rho;
    q.trussness = spec.c;
    q.growth_factor = spec.delta;
    std::set<KeywordId> interned;
    for (const auto& name : spec.keywords) {
        KeywordId k = g.keyword_id(name);
        if (k == kNoKeyword) throw UnknownKeyword(name);
        interned.insert(k);
    }
    q.keywords.assign(interned.begin(), interned.end());
    return q;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json stats_to_json(const QueryStats& s) {
    ordered_json j;
    j["graph"] = {{"vertices", s.graph_vertices}, {"edges", s.graph_edges}};
    j["prepruning"] = {{"components", s.pruned_components},
                       {"vertices", s.pruned_vertices},
                       {"edges", s.pruned_edges}};
    ordered_json lb;
    lb["found"] = s.lower_bound_found;
    lb["dist"] = s.lower_bound_dist;
    lb["edges_consumed"] = s.lower_bound_edges;
    j["lower_bound"] = lb;

    ordered_json exp;
    std::vector<std::uint64_t> sizes;
    std::vector<bool> found;
    for (const auto& step : s.expansion) {
        sizes.push_back(step.edges_total);
        found.push_back(step.found);
    }
    exp["rounds"] = sizes;
    exp["rounds_found"] = found;
    exp["edge_sum"] = s.expansion_edge_sum;
    exp["bound_factor"] = s.expansion_bound_factor;
    exp["bound_limit"] = s.expansion_bound_limit;
    exp["work_ratio"] = s.expansion_work_ratio;
    exp["satisfied_component_vertices"] = s.satisfied_component_vertices;
    exp["truss_set_vertices"] = s.truss_set_vertices;
    exp["validation_retries"] = s.candidate_validation_retries;
    j["expansion"] = exp;

    j["candidate"] = {{"vertices", s.candidate_vertices}, {"edges", s.candidate_edges}};
    j["reduction"] = {{"vertices_deleted", s.reduce_vertices_deleted},
                      {"edges_deleted", s.reduce_edges_deleted},
                      {"cut_ops", s.forest_cut_ops},
                      {"link_ops", s.forest_link_ops},
                      {"op_budget", s.forest_op_budget},
                      {"max_edge_level", s.forest_max_level},
                      {"level_cap", s.forest_level_cap}};
    return j;
}

std::string fmt_double(double v) { return nlohmann::json(v).dump(); }

}  // namespace

std::string emit_result(const SearchResult& r, OutputFormat format, const GeoSocialGraph& g) {
    std::vector<std::string> vnames;
    std::vector<std::pair<std::string, std::string>> enames;
    if (r.group) {
        for (VertexId v : r.group->vertices) vnames.push_back(g.external_id(v));
        std::sort(vnames.begin(), vnames.end());
        for (const Edge& e : r.group->edges) {
            std::string a = g.external_id(e.u), b = g.external_id(e.v);
            if (b < a) std::swap(a, b);
            enames.emplace_back(std::move(a), std::move(b));
        }
        std::sort(enames.begin(), enames.end());
    }

    if (format == OutputFormat::json) {
        ordered_json j;
        j["found"] = r.group.has_value();
        if (r.group) {
            j["dist"] = r.group->dist;
            j["vertices"] = vnames;
            ordered_json edges = ordered_json::array();
            for (const auto& [a, b] : enames) edges.push_back({a, b});
            j["edges"] = edges;
        }
        if (r.with_stats) j["stats"] = stats_to_json(r.stats);
        return j.dump() + "\n";
    }

    std::ostringstream out;
    out << "found\t" << (r.group ? "true" : "false") << "\n";
    if (r.group) {
        out << "dist\t" << fmt_double(r.group->dist) << "\n";
        out << "vertices\t";
        for (std::size_t i = 0; i < vnames.size(); ++i) out << (i ? "," : "") << vnames[i];
        out << "\n";
        out << "edges\t";
        for (std::size_t i = 0; i < enames.size(); ++i)
            out << (i ? "," : "") << enames[i].first << "-" << enames[i].second;
        out << "\n";
    }
    if (r.with_stats) {
        ordered_json stats = stats_to_json(r.stats);
        ordered_json flat = stats.flatten();
        for (auto it = flat.begin(); it != flat.end(); ++it)
            out << "stat" << it.key() << "\t" << it.value().dump() << "\n";
    }
    return out.str();
}

}  // namespace gst
