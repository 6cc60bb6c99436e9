#include "ptolemy/geodesic_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <thread>

#include "ptolemy/errors.hpp"
#include "ptolemy/parallel.hpp"

namespace ptolemy {

GraphSpace::GraphSpace(int n, const std::vector<GraphEdge>& edges,
                       std::vector<std::array<double, 2>> positions)
    : n_(n), adj_(static_cast<std::size_t>(n)), pos_(std::move(positions)), cache_(static_cast<std::size_t>(n)) {
    if (n < 1) throw error(errc::bad_input, "graph needs at least one vertex");
    if (!pos_.empty() && pos_.size() != static_cast<std::size_t>(n))
        throw error(errc::bad_input, "positions size does not match vertex count");
    for (const GraphEdge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
            throw error(errc::bad_input, "bad edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        if (!(e.len > 0))
            throw error(errc::bad_input, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has non-positive length");
        adj_[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.len);
        adj_[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.len);
    }
    for (auto& nb : adj_) {
        std::sort(nb.begin(), nb.end());
        // keep the shortest parallel edge
        nb.erase(std::unique(nb.begin(), nb.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                 nb.end());
    }
    // connectivity
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int found = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [w, len] : adj_[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++found;
                stack.push_back(w);
            }
    }
    if (found != n) throw error(errc::disconnected, std::to_string(n - found) + " vertices unreachable from vertex 0");
}

std::vector<GraphEdge> GraphSpace::edges() const {
    std::vector<GraphEdge> out;
    for (int u = 0; u < n_; ++u)
        for (const auto& [v, len] : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.push_back({u, v, len});
    return out;
}

ShortestPaths GraphSpace::shortest(int source) const {
    if (source < 0 || source >= n_) throw error(errc::bad_input, "source vertex out of range");
    const double inf = std::numeric_limits<double>::infinity();
    ShortestPaths sp;
    sp.dist.assign(static_cast<std::size_t>(n_), inf);
    sp.pred.assign(static_cast<std::size_t>(n_), -1);
    std::vector<char> done(static_cast<std::size_t>(n_), 0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    sp.dist[static_cast<std::size_t>(source)] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (done[static_cast<std::size_t>(u)]) continue;
        done[static_cast<std::size_t>(u)] = 1;
        for (const auto& [v, len] : adj_[static_cast<std::size_t>(u)]) {
            const double cand = du + len;
            double& dv = sp.dist[static_cast<std::size_t>(v)];
            int& pv = sp.pred[static_cast<std::size_t>(v)];
            if (cand < dv) {
                dv = cand;
                pv = u;
                heap.emplace(cand, v);
            } else if (cand == dv && u < pv) {
                // equal-distance tie: prefer the smallest predecessor id
                pv = u;
            }
        }
    }
    return sp;
}

const ShortestPaths& GraphSpace::row(int source) const {
    if (source < 0 || source >= n_) throw error(errc::bad_input, "source vertex out of range");
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (cache_[static_cast<std::size_t>(source)]) return *cache_[static_cast<std::size_t>(source)];
    }
    auto sp = std::make_unique<ShortestPaths>(shortest(source));
    std::lock_guard<std::mutex> lk(mu_);
    auto& slot = cache_[static_cast<std::size_t>(source)];
    if (!slot) slot = std::move(sp);
    return *slot;
}

std::span<const double> GraphSpace::dist_row(int source) const { return row(source).dist; }

double GraphSpace::distance(int u, int v) const { return row(u).dist[static_cast<std::size_t>(v)]; }

std::vector<int> GraphSpace::geodesic(int u, int v) const {
    const ShortestPaths& sp = row(u);
    std::vector<int> path{v};
    while (path.back() != u) {
        const int p = sp.pred[static_cast<std::size_t>(path.back())];
        if (p < 0) throw error(errc::disconnected, "no path between the requested vertices");
        path.push_back(p);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

void GraphSpace::precompute_all(int threads) const {
    const int nw = std::min(resolve_threads(threads), n_);
    if (nw <= 1) {
        for (int v = 0; v < n_; ++v) row(v);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w)
        pool.emplace_back([&, w] {
            for (int v = w; v < n_; v += nw) row(v);
        });
    for (auto& t : pool) t.join();
}

FiniteMetricSpace GraphSpace::to_metric_space(std::vector<std::string> labels) const {
    precompute_all();
    const std::size_t un = static_cast<std::size_t>(n_);
    std::vector<double> m(un * un);
    for (int i = 0; i < n_; ++i) {
        auto r = dist_row(i);
        std::copy(r.begin(), r.end(), m.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * un));
    }
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = i + 1; j < un; ++j) {
            const double v = std::min(m[i * un + j], m[j * un + i]);
            m[i * un + j] = m[j * un + i] = v;
        }
    if (labels.empty()) labels = default_labels(n_);
    return validate_metric(std::move(m), std::move(labels));
}

bool MidpointSet::contains(int v) const { return std::binary_search(members.begin(), members.end(), v); }

MidpointSet midpoints(const GraphSpace& g, int x, int y, double tol) {
    if (x == y) throw error(errc::bad_input, "midpoints requires two distinct vertices");
    MidpointSet out;
    out.x = x;
    out.y = y;
    out.tol = tol;
    auto dx = g.dist_row(x);
    auto dy = g.dist_row(y);
    const double dxy = dx[static_cast<std::size_t>(y)];
    for (int z = 0; z < g.size(); ++z) {
        const double a = dx[static_cast<std::size_t>(z)];
        const double b = dy[static_cast<std::size_t>(z)];
        if (std::abs(a - b) <= tol && a + b <= dxy + tol) out.members.push_back(z);
    }
    return out;
}

double midpoint_set_diameter(const GraphSpace& g, const MidpointSet& m) {
    double diam = 0.0;
    for (std::size_t i = 0; i < m.members.size(); ++i) {
        auto row = g.dist_row(m.members[i]);
        for (std::size_t j = i + 1; j < m.members.size(); ++j)
            diam = std::max(diam, row[static_cast<std::size_t>(m.members[j])]);
    }
    return diam;
}

std::vector<double> convexity_profile(const GraphSpace& g, int p, const std::vector<int>& path, double tol) {
    if (path.size() < 2) throw error(errc::bad_input, "path needs at least two vertices");
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) len += g.distance(path[i], path[i + 1]);
    const double direct = g.distance(path.front(), path.back());
    if (std::abs(len - direct) > tol * std::max(1.0, direct))
        throw error(errc::not_a_geodesic, "path length " + std::to_string(len) + " vs endpoint distance " +
                                              std::to_string(direct));
    auto dp = g.dist_row(p);
    std::vector<double> defects;
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
        defects.push_back(dp[static_cast<std::size_t>(path[i])] -
                          0.5 * (dp[static_cast<std::size_t>(path[i - 1])] + dp[static_cast<std::size_t>(path[i + 1])]));
    return defects;
}

Projection project(const GraphSpace& g, const std::vector<int>& subset, int x) {
    if (subset.empty()) throw error(errc::bad_input, "projection target set is empty");
    auto dx = g.dist_row(x);
    Projection best;
    best.distance = std::numeric_limits<double>::infinity();
    for (int v : subset) {
        const double d = dx[static_cast<std::size_t>(v)];
        if (d < best.distance || (d == best.distance && v < best.vertex)) {
            best.distance = d;
            best.vertex = v;
        }
    }
    return best;
}

double projection_lipschitz_probe(const GraphSpace& g, const std::vector<int>& subset,
                                  const std::vector<std::pair<int, int>>& pairs) {
    double worst = 0.0;
    for (const auto& [x, y] : pairs) {
        if (x == y) continue;
        const Projection px = project(g, subset, x);
        const Projection py = project(g, subset, y);
        const double dxy = g.distance(x, y);
        if (dxy > 0) worst = std::max(worst, g.distance(px.vertex, py.vertex) / dxy);
    }
    return worst;
}

GraphSpace grid_strip_graph(const StripSpec& spec, int k) {
    validate_spec(spec);
    if (k < 1) throw error(errc::bad_spec, "ring radius k must be >= 1");
    if (spec.family != StripFamily::euclidean && spec.family != StripFamily::conformal)
        throw error(errc::bad_spec, std::string("no graph form for family ") + family_name(spec.family));
    const bool conformal = spec.family == StripFamily::conformal;
    const int n = spec.nt * spec.ns;
    std::vector<std::array<double, 2>> pos(static_cast<std::size_t>(n));
    for (int it = 0; it < spec.nt; ++it)
        for (int is = 0; is < spec.ns; ++is)
            pos[static_cast<std::size_t>(it * spec.ns + is)] = {spec.t_of(it), spec.s_of(is)};

    std::vector<GraphEdge> edges;
    for (int it = 0; it < spec.nt; ++it)
        for (int is = 0; is < spec.ns; ++is) {
            const int u = it * spec.ns + is;
            for (int di = 0; di <= k; ++di)
                for (int dj = -k; dj <= k; ++dj) {
                    if (di == 0 && dj <= 0) continue; // one direction per undirected edge
                    const int it2 = it + di, is2 = is + dj;
                    if (it2 >= spec.nt || is2 < 0 || is2 >= spec.ns) continue;
                    const int v = it2 * spec.ns + is2;
                    double len = std::hypot(di * spec.dt(), dj * spec.ds());
                    if (conformal) {
                        const auto& a = pos[static_cast<std::size_t>(u)];
                        const auto& b = pos[static_cast<std::size_t>(v)];
                        len *= 0.5 * (conformal_factor(spec, a[0], a[1]) + conformal_factor(spec, b[0], b[1]));
                    }
                    edges.push_back({u, v, len});
                }
        }
    return GraphSpace(n, edges, std::move(pos));
}

} // namespace ptolemy
