#include "ptolemy/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ptolemy/errors.hpp"
#include "ptolemy/geodesic_graph.hpp"
#include "ptolemy/rng.hpp"

namespace ptolemy {

const char* family_name(StripFamily f) {
    switch (f) {
        case StripFamily::euclidean: return "euclidean";
        case StripFamily::lp: return "lp";
        case StripFamily::snowflake: return "snowflake";
        case StripFamily::conformal: return "conformal";
    }
    return "?";
}

const char* generator_name(RandomGenerator g) {
    switch (g) {
        case RandomGenerator::shifted_uniform: return "shifted-uniform";
        case RandomGenerator::graph_metric: return "graph-metric";
        case RandomGenerator::perturbed_euclidean: return "perturbed-euclidean";
    }
    return "?";
}

void validate_spec(const StripSpec& spec) {
    if (!(spec.a > 0)) throw error(errc::bad_spec, "strip width a must be positive");
    if (!(spec.T > 0)) throw error(errc::bad_spec, "half-length T must be positive");
    if (spec.nt < 2 || spec.ns < 2) throw error(errc::bad_spec, "grid needs nt >= 2 and ns >= 2");
    switch (spec.family) {
        case StripFamily::lp:
            if (!(spec.p >= 1.0)) throw error(errc::bad_spec, "lp exponent must satisfy p >= 1");
            break;
        case StripFamily::snowflake:
            if (!(spec.eps > 0.0 && spec.eps <= 1.0))
                throw error(errc::bad_spec, "snowflake exponent must satisfy 0 < eps <= 1");
            break;
        case StripFamily::conformal:
            if (!(spec.bump_height >= 0.0)) throw error(errc::bad_spec, "bump height must be >= 0");
            if (!(spec.bump_radius > 0.0)) throw error(errc::bad_spec, "bump radius must be positive");
            if (spec.kring < 1) throw error(errc::bad_spec, "conformal k-ring must be >= 1");
            break;
        case StripFamily::euclidean: break;
    }
}

bool has_closed_form(StripFamily f) { return f != StripFamily::conformal; }

double family_distance(const StripSpec& spec, double dt, double ds) {
    switch (spec.family) {
        case StripFamily::euclidean: return std::hypot(dt, ds);
        case StripFamily::lp:
            if (spec.p == 2.0) return std::hypot(dt, ds);
            return std::pow(std::pow(std::abs(dt), spec.p) + std::pow(std::abs(ds), spec.p), 1.0 / spec.p);
        case StripFamily::snowflake: {
            const double e = std::hypot(dt, ds);
            return spec.eps == 1.0 ? e : std::pow(e, spec.eps);
        }
        case StripFamily::conformal: break;
    }
    throw error(errc::bad_spec, "conformal family has no closed-form distance");
}

double conformal_factor(const StripSpec& spec, double t, double s) {
    const double ds = s - 0.5 * spec.a;
    const double r2 = (t * t + ds * ds) / (spec.bump_radius * spec.bump_radius);
    return 1.0 + spec.bump_height * std::exp(-r2);
}

StripChart strip_sample(const StripSpec& spec) {
    validate_spec(spec);
    StripChart chart;
    chart.spec = spec;
    const int n = spec.nt * spec.ns;
    chart.points.reserve(static_cast<std::size_t>(n));
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int it = 0; it < spec.nt; ++it)
        for (int is = 0; is < spec.ns; ++is) {
            chart.points.push_back({it, is, spec.t_of(it), spec.s_of(is)});
            labels.push_back("t" + std::to_string(it) + "s" + std::to_string(is));
        }

    std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    if (has_closed_form(spec.family)) {
        for (int i = 0; i < n; ++i) {
            const GridPoint& pi = chart.points[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < n; ++j) {
                const GridPoint& pj = chart.points[static_cast<std::size_t>(j)];
                const double dij = family_distance(spec, pi.t - pj.t, pi.s - pj.s);
                m[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = dij;
                m[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = dij;
            }
        }
    } else {
        GraphSpace g = grid_strip_graph(spec, spec.kring);
        g.precompute_all();
        for (int i = 0; i < n; ++i) {
            auto row = g.dist_row(i);
            for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)];
        }
        // APSP rows are computed independently per source; enforce exact
        // symmetry before validation
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double v = std::min(m[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)],
                                          m[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)]);
                m[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = v;
                m[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = v;
            }
    }
    chart.space = validate_metric(std::move(m), std::move(labels));
    return chart;
}

FiniteMetricSpace catalog_e1() {
    return validate_metric(std::vector<std::vector<double>>{{0, 2, 1, 1}, {2, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}},
                           {"x", "y", "z", "w"});
}

FiniteMetricSpace catalog_e2(double a) {
    if (!(a > 1.0 && a < 2.0)) throw error(errc::bad_input, "E2 parameter must satisfy 1 < a < 2");
    return validate_metric(
        std::vector<std::vector<double>>{{0, 2, 1, 1}, {2, 0, a, a}, {1, a, 0, 2}, {1, a, 2, 0}},
        {"x", "y", "z", "w"});
}

FiniteMetricSpace catalog_square() {
    const double r2 = std::sqrt(2.0);
    return validate_metric(
        std::vector<std::vector<double>>{{0, 1, r2, 1}, {1, 0, 1, r2}, {r2, 1, 0, 1}, {1, r2, 1, 0}},
        {"a", "b", "c", "d"});
}

FiniteMetricSpace catalog_tetrahedron() {
    return validate_metric(std::vector<std::vector<double>>{{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}},
                           {"a", "b", "c", "d"});
}

std::vector<std::pair<std::string, FiniteMetricSpace>> catalog(double e2_a) {
    std::vector<std::pair<std::string, FiniteMetricSpace>> out;
    out.emplace_back("E1", catalog_e1());
    char buf[32];
    std::snprintf(buf, sizeof buf, "E2(%g)", e2_a);
    out.emplace_back(buf, catalog_e2(e2_a));
    out.emplace_back("square", catalog_square());
    out.emplace_back("tetrahedron", catalog_tetrahedron());
    return out;
}

void metric_closure(std::vector<double>& d, int n) {
    const std::size_t un = static_cast<std::size_t>(n);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < un; ++k)
            for (std::size_t i = 0; i < un; ++i) {
                const double dik = d[i * un + k];
                for (std::size_t j = 0; j < un; ++j) {
                    const double v = dik + d[k * un + j];
                    if (v < d[i * un + j]) {
                        d[i * un + j] = v;
                        changed = true;
                    }
                }
            }
    }
}

FiniteMetricSpace random_metric(int n, std::uint64_t seed, RandomGenerator g) {
    if (n < 4) throw error(errc::bad_input, "random_metric needs n >= 4");
    const std::size_t un = static_cast<std::size_t>(n);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(g)));
    std::vector<double> d(un * un, 0.0);

    switch (g) {
        case RandomGenerator::shifted_uniform: {
            for (std::size_t i = 0; i < un; ++i)
                for (std::size_t j = i + 1; j < un; ++j) d[i * un + j] = d[j * un + i] = rng.uniform(1.0, 2.0);
            break;
        }
        case RandomGenerator::graph_metric: {
            const double inf = std::numeric_limits<double>::infinity();
            std::fill(d.begin(), d.end(), inf);
            for (std::size_t i = 0; i < un; ++i) d[i * un + i] = 0.0;
            auto add_edge = [&](std::size_t i, std::size_t j) {
                const double w = rng.uniform(1.0, 2.0);
                d[i * un + j] = d[j * un + i] = std::min(d[i * un + j], w);
            };
            // random spanning path keeps the graph connected
            std::vector<std::size_t> perm(un);
            for (std::size_t i = 0; i < un; ++i) perm[i] = i;
            for (std::size_t i = un - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
            for (std::size_t i = 0; i + 1 < un; ++i) add_edge(perm[i], perm[i + 1]);
            for (std::size_t i = 0; i < un; ++i)
                for (std::size_t j = i + 1; j < un; ++j)
                    if (rng.uniform01() < 0.5) add_edge(i, j);
            metric_closure(d, n);
            break;
        }
        case RandomGenerator::perturbed_euclidean: {
            const int dim = 3;
            const double delta = 0.1;
            std::vector<double> pts(un * dim);
            for (double& v : pts) v = rng.uniform01();
            for (std::size_t i = 0; i < un; ++i)
                for (std::size_t j = i + 1; j < un; ++j) {
                    double s = 0.0;
                    for (int c = 0; c < dim; ++c) {
                        const double diff = pts[i * dim + static_cast<std::size_t>(c)] - pts[j * dim + static_cast<std::size_t>(c)];
                        s += diff * diff;
                    }
                    const double factor = rng.uniform(1.0 - delta, 1.0 + delta);
                    d[i * un + j] = d[j * un + i] = std::sqrt(s) * factor;
                }
            metric_closure(d, n);
            break;
        }
    }
    return validate_metric(std::move(d), default_labels(n));
}

} // namespace ptolemy
