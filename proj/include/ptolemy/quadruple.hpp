#pragma once

#include <array>

#include "ptolemy/metric_space.hpp"

namespace ptolemy {

// Four distinct points in canonical (strictly increasing) index order with
// their six pairwise distances in the fixed edge order
//   (d01, d02, d03, d12, d13, d23).
struct Quadruple {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::array<double, 6> d{};

    bool operator==(const Quadruple&) const = default;
};

Quadruple make_quadruple(const FiniteMetricSpace& space, int i, int j, int k, int l);
Quadruple quadruple_from_distances(const std::array<double, 6>& d);

// The three diagonal-pairing products |xy||zw|, |xz||yw|, |xw||yz| with
// (x,y,z,w) the points in canonical index order.
std::array<double, 3> pairing_products(const Quadruple& q);

// Normalized signed slack of each four-point inequality; negative means
// violated. All margins are invariant under relabeling the four points and
// under scaling all distances:
//  - a relabeling permutes the three diagonal pairings among themselves, so
//    checking the 3 (Ptolemy, quadrilateral) or 6 (cosq) role assignments
//    below covers all 24 permutations;
//  - check_pt normalizes by the largest pairing product, check_qi/check_cosq
//    by the squared largest distance. A zero normalizer yields margin 0.
double check_pt(const Quadruple& q);
double check_qi(const Quadruple& q);
double check_cosq(const Quadruple& q);

struct QuadrupleReport {
    Quadruple quadruple;
    double margin_pt = 0;
    double margin_qi = 0;
    double margin_cosq = 0;
};

QuadrupleReport report_quadruple(const Quadruple& q);

// Computes margin_qi and margin_cosq together. The cosq slack of each role is
// derived from the quadrilateral slack by subtracting a squared difference,
// which makes margin_qi >= margin_cosq hold exactly in floating point.
void qi_cosq_margins(const Quadruple& q, double& margin_qi, double& margin_cosq);

} // namespace ptolemy
