#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "ptolemy/metric_space.hpp"
#include "ptolemy/spaces.hpp"

namespace ptolemy {

struct GraphEdge {
    int u = 0, v = 0;
    double len = 0;
};

struct ShortestPaths {
    std::vector<double> dist;
    std::vector<int> pred; // -1 at the source; ties resolved to the smallest id
};

// Weighted undirected graph with the shortest-path metric. Must be connected
// with positive edge lengths. Shortest-path rows are cached lazily; completed
// rows are safe to read concurrently.
class GraphSpace {
public:
    GraphSpace(int n, const std::vector<GraphEdge>& edges,
               std::vector<std::array<double, 2>> positions = {});

    int size() const { return n_; }
    bool has_positions() const { return !pos_.empty(); }
    const std::array<double, 2>& position(int v) const { return pos_[static_cast<std::size_t>(v)]; }
    const std::vector<std::pair<int, double>>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    std::vector<GraphEdge> edges() const;

    // uncached Dijkstra with deterministic predecessors
    ShortestPaths shortest(int source) const;

    std::span<const double> dist_row(int source) const;
    double distance(int u, int v) const;
    // vertex path from u to v following cached predecessors of u
    std::vector<int> geodesic(int u, int v) const;
    void precompute_all(int threads = 0) const;

    // dense APSP metric as a validated FiniteMetricSpace
    FiniteMetricSpace to_metric_space(std::vector<std::string> labels = {}) const;

private:
    const ShortestPaths& row(int source) const;

    int n_ = 0;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<std::array<double, 2>> pos_;
    mutable std::vector<std::unique_ptr<ShortestPaths>> cache_;
    mutable std::mutex mu_;
};

// Vertices within tol of being a midpoint of (x, y):
//   | d(x,z) - d(z,y) | <= tol   and   d(x,z) + d(z,y) <= d(x,y) + tol.
struct MidpointSet {
    int x = 0, y = 0;
    double tol = 0;
    std::vector<int> members; // ascending ids

    bool contains(int v) const;
};

MidpointSet midpoints(const GraphSpace& g, int x, int y, double tol);
// largest graph distance between two members (0 for empty or singleton sets)
double midpoint_set_diameter(const GraphSpace& g, const MidpointSet& m);

// Convexity defects of d(p, .) along a geodesic vertex path:
//   defect_i = d(p, v_i) - (d(p, v_{i-1}) + d(p, v_{i+1})) / 2
// for interior i. Throws NotAGeodesic when the path length differs from the
// endpoint distance by more than tol.
std::vector<double> convexity_profile(const GraphSpace& g, int p, const std::vector<int>& path,
                                      double tol = 1e-9);

struct Projection {
    int vertex = -1;
    double distance = 0;
};

// Nearest member of `subset` to x; ties resolved to the smallest id.
Projection project(const GraphSpace& g, const std::vector<int>& subset, int x);

// Observed Lipschitz ratio d(proj(x), proj(y)) / d(x, y) maximized over the
// given probe pairs. A measurement, not a certified bound.
double projection_lipschitz_probe(const GraphSpace& g, const std::vector<int>& subset,
                                  const std::vector<std::pair<int, int>>& pairs);

// Grid discretization of a strip: vertices are the StripSpec grid points and
// edges join vertices within k rings. Edge lengths are the Euclidean
// coordinate distances, scaled by the mean conformal factor of the endpoints
// for the conformal family. Other families have no graph form.
GraphSpace grid_strip_graph(const StripSpec& spec, int k);

} // namespace ptolemy
