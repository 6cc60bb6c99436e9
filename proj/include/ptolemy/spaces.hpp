#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ptolemy/metric_space.hpp"

namespace ptolemy {

enum class StripFamily { euclidean, lp, snowflake, conformal };

const char* family_name(StripFamily f);

// Sampling grid over the strip [-T, T] x [0, a] together with the metric
// family placed on it. Grid points are (-T + i*dt, j*ds) with
// dt = 2T/(nt-1), ds = a/(ns-1).
struct StripSpec {
    double a = 1.0; // strip width
    double T = 5.0; // half-length
    int nt = 21;
    int ns = 5;
    StripFamily family = StripFamily::euclidean;
    double p = 2.0;            // lp exponent, p >= 1
    double eps = 1.0;          // snowflake exponent, 0 < eps <= 1
    double bump_height = 0.5;  // conformal bump amplitude, >= 0
    double bump_radius = 0.5;  // conformal bump radius, > 0
    int kring = 3;             // neighborhood radius of the conformal graph

    double dt() const { return 2.0 * T / (nt - 1); }
    double ds() const { return a / (ns - 1); }
    double t_of(int it) const { return -T + it * dt(); }
    double s_of(int is) const { return is * ds(); }
};

void validate_spec(const StripSpec& spec); // BadSpec

// Closed-form distance between two displacement components for the formula
// families (euclidean, lp, snowflake). Conformal has no closed form.
double family_distance(const StripSpec& spec, double dt, double ds);
bool has_closed_form(StripFamily f);

// conformal scaling factor at (t,s): 1 + height * exp(-r^2/radius^2) with the
// bump centered mid-strip at t = 0
double conformal_factor(const StripSpec& spec, double t, double s);

struct GridPoint {
    int it = 0, is = 0;
    double t = 0, s = 0;
};

struct StripChart {
    StripSpec spec;
    std::vector<GridPoint> points; // index = it * ns + is
    FiniteMetricSpace space;

    int index(int it, int is) const { return it * spec.ns + is; }
    const GridPoint& at(int it, int is) const { return points[static_cast<std::size_t>(index(it, is))]; }
};

// Samples the grid and fills the full distance matrix: closed form for the
// formula families, k-ring graph shortest paths for conformal.
StripChart strip_sample(const StripSpec& spec);

// Named four-point reference spaces:
//   E1            |xy| = 2, all other distances 1
//   E2(a)         |xy| = |zw| = 2, |xz| = |xw| = 1, |yz| = |yw| = a, 1 < a < 2
//   square        unit square with its diagonals
//   tetrahedron   all distances 1
std::vector<std::pair<std::string, FiniteMetricSpace>> catalog(double e2_a = 1.9);
FiniteMetricSpace catalog_e1();
FiniteMetricSpace catalog_e2(double a = 1.9);
FiniteMetricSpace catalog_square();
FiniteMetricSpace catalog_tetrahedron();

enum class RandomGenerator { shifted_uniform, graph_metric, perturbed_euclidean };

const char* generator_name(RandomGenerator g);

// Seeded random metric spaces; identical (n, seed, generator) gives an
// identical space.
//  - shifted_uniform: i.i.d. distances in [1,2] (triangle holds since 1+1>=2)
//  - graph_metric: shortest-path metric of a connected random weighted graph
//  - perturbed_euclidean: random point cloud distances scaled by i.i.d.
//    factors in [0.9, 1.1], then repaired by metric closure
FiniteMetricSpace random_metric(int n, std::uint64_t seed, RandomGenerator g);

// Repeated relaxation d_ik = min(d_ik, d_ij + d_jk) until a fixed point, so
// the triangle inequality holds exactly in floating point.
void metric_closure(std::vector<double>& d, int n);

} // namespace ptolemy
