#pragma once

#include <cstdint>
#include <string>

#include "gst/graph.hpp"
#include "gst/types.hpp"

namespace gst {

// Deterministic generator for randomized testing and synthetic benchmarks.
// Runs off a self-contained 64-bit generator so streams are stable across
// platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x853c49e6748fea9bull) {}

    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);           // uniform in [0, bound)
    double unit();                                      // uniform in [0, 1)
    double uniform(double lo, double hi);

  private:
    std::uint64_t state_;
};

struct InstanceOptions {
    std::size_t min_vertices = 8;
    std::size_t max_vertices = 40;
    double min_edge_prob = 0.2;
    double max_edge_prob = 0.4;
    int min_keywords = 3;   // keyword universe size
    int max_keywords = 5;
    double coord_span = 100.0;
};

struct QueryOptions {
    int min_c = 3;
    int max_c = 4;
    int min_rho = 1;
    int max_rho = 2;
    int min_phi = 1;
    int max_phi = 3;  // capped at the keyword universe size
    double delta = 2.0;
};

GeoSocialGraph random_graph(Rng& rng, const InstanceOptions& opt);
Query random_query(Rng& rng, const GeoSocialGraph& g, const QueryOptions& opt);

/// Replayable dump of an instance and query (vertex coordinates, keywords,
/// edges, parameters) for failure reports.
std::string dump_instance(const GeoSocialGraph& g, const Query& q);

}  // namespace gst
