#pragma once

#include <span>
#include <string>
#include <vector>

#include "ptolemy/spaces.hpp"

namespace ptolemy {

// index of the sampled grid point at (t, s), or -1 if not sampled
int find_point(const StripChart& chart, double t, double s, double tol = 1e-9);

// Finite-truncation Busemann field of one sampled boundary-parallel line:
// values[i] = d(x_i, c(dir*T)) - T. The same field at truncation T/2 is kept
// alongside; their pointwise gap is the reported truncation error.
struct BusemannField {
    int line_is = 0;
    int direction = 1; // +1 or -1
    double T = 0;      // snapped to the grid
    double T_half = 0;
    std::vector<double> values;
    std::vector<double> values_half;
    double truncation_error = 0; // max_i |values - values_half|
};

BusemannField busemann(const StripChart& chart, int line_is, int direction, double T);

// max |b1 - b2 - mean| over the sampled points with |t| <= window. The
// truncation bar is the pointwise change of (b1 - b2) between T and T/2; a
// deviation within a small multiple of the bar is consistent with a constant
// limit.
struct ConstancyReport {
    double deviation = 0;
    double mean = 0;
    double truncation_bar = 0;
};

ConstancyReport busemann_difference(const StripChart& chart, int line1_is, int line2_is, int direction,
                                    double T, double window);

// max |f(i+1) - 2 f(i) + f(i-1)| / step^2 along an equally spaced sample
double affinity_defect(std::span<const double> values, double step);

// Strip coordinates relative to a base sample point x0 = (t0, s0):
// B(x) = t(x) - t0 and A(x) = sign(s - s0) * d(x, fibre point at height s0).
struct FibreCoords {
    int base_index = 0;
    std::vector<double> B;
    std::vector<double> A;
};

FibreCoords fibre_map(const StripChart& chart, int base_index); // BoundaryBasepoint

struct PairwiseRatioReport {
    double min_ratio = 0;
    double max_ratio = 0;
    double max_abs_dev = 0; // max | |F(x)-F(y)| - d(x,y) |
};

// |F(x)-F(y)|_euclidean / d(x,y) extremes over all sampled pairs
PairwiseRatioReport fibre_bilipschitz(const StripChart& chart, const FibreCoords& fc);

struct LipschitzReport {
    double worst_B = 0; // max |B(x)-B(y)| / d(x,y)
    double worst_A = 0; // max |A(x)-A(y)| / d(x,y)
};

LipschitzReport fibre_lipschitz(const StripChart& chart, const FibreCoords& fc);

// worst over sampled x and fibre index t' of
//   min over sampled x' in the t'-fibre of | d(x,x') - |t(x) - t'| |
double property_a_defect(const StripChart& chart);

// Metric of the chart rescaled by lambda, read through the fibre chart:
// points with |lambda F(x)| <= radius are compared pairwise against the plane
// metric of their images.
struct RescaleReport {
    double lambda = 1;
    int window_points = 0;
    double sup_dev = 0;   // sup | lambda d(x,y) - |lambda F(x) - lambda F(y)| |
    double min_ratio = 1; // extremes of lambda d / d_euclidean
    double max_ratio = 1;
};

RescaleReport rescale(const StripChart& chart, int base_index, double lambda, double radius);

// Fibre-coordinate ratios A^2(gamma(r)) / r^2 along the ray
// gamma(r) = x0 + r (cos theta, sin theta), evaluated in closed form when the
// family has one (nearest sampled points otherwise).
struct PythProbe {
    double theta = 0;
    double alpha = 0; // B(gamma(r)) / r = cos theta
    std::vector<double> ratios;
};

PythProbe pyth_probe(const StripChart& chart, int base_index, double theta, std::span<const double> radii);

// mu(t) = d(c_{s1}(t), c_{s2}(t)) along the sampled parameter, plus the worst
// violations (clamped at 0) of the two quadratic consequences of the Ptolemy
// inequality for parallel lines:
//   max(mu,mu')^2 <= mu mu' + (t-t')^2
//   |mu - mu'|    <= (t-t')^2 / min mu
struct EquidistanceReport {
    std::vector<double> mu;
    double worst_pt_bound_defect = 0;
    double worst_quadratic_defect = 0;
};

EquidistanceReport equidistance_trace(const StripChart& chart, int s1_is, int s2_is);

// worst relative defect of d(x,y)^2 against (t-t')^2 + (s-s')^2 over sampled
// pairs; pairs closer than 1e-9 are skipped
struct FlatConclusionReport {
    double worst_defect = 0;
    int i = -1, j = -1;
};

FlatConclusionReport flat_conclusion(const StripChart& chart);
double flat_defect_at(const StripChart& chart, int i, int j);

// ---- strip-verify battery ----------------------------------------------

struct CheckResult {
    std::string name;
    bool asserted = false; // false = measurement only
    bool pass = true;
    double value = 0;
    std::string detail;
};

struct BatteryReport {
    StripSpec spec;
    std::vector<CheckResult> checks;
    bool all_pass = true; // over asserted checks

    const CheckResult* find(const std::string& name) const;
};

// Runs the full battery on one strip family: condition scans, Busemann
// checks, fibre chart bounds, rescaling, the Pythagorean probe, equidistance
// and the flat conclusion. Checks are asserted only on families where the
// property is established; on the others the measured value is reported.
BatteryReport run_battery(const StripSpec& spec, int threads = 0);

} // namespace ptolemy
