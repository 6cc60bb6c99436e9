#include "ptolemy/quadruple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptolemy/errors.hpp"

namespace ptolemy {

Quadruple make_quadruple(const FiniteMetricSpace& space, int i, int j, int k, int l) {
    if (!(0 <= i && i < j && j < k && k < l && l < space.n()))
        throw error(errc::bad_input, "quadruple indices must be strictly increasing and in range");
    Quadruple q;
    q.idx = {i, j, k, l};
    q.d = {space.d(i, j), space.d(i, k), space.d(i, l), space.d(j, k), space.d(j, l), space.d(k, l)};
    return q;
}

Quadruple quadruple_from_distances(const std::array<double, 6>& d) {
    Quadruple q;
    q.d = d;
    return q;
}

std::array<double, 3> pairing_products(const Quadruple& q) {
    // pairings: (01)(23), (02)(13), (03)(12)
    return {q.d[0] * q.d[5], q.d[1] * q.d[4], q.d[2] * q.d[3]};
}

double check_pt(const Quadruple& q) {
    const auto [p1, p2, p3] = pairing_products(q);
    const double pmax = std::max({p1, p2, p3});
    if (pmax == 0.0) return 0.0;
    const double m1 = (p2 + p3) - p1;
    const double m2 = (p1 + p3) - p2;
    const double m3 = (p1 + p2) - p3;
    return std::min({m1, m2, m3}) / pmax;
}

namespace {

struct PairingSquares {
    double lhs;    // sum of the two squares of this pairing
    double diff_a; // difference of the two distances of the second pairing
    double diff_b; // difference of the two distances of the third pairing
};

} // namespace

void qi_cosq_margins(const Quadruple& q, double& margin_qi, double& margin_cosq) {
    const double dmax = *std::max_element(q.d.begin(), q.d.end());
    if (dmax == 0.0) {
        margin_qi = 0.0;
        margin_cosq = 0.0;
        return;
    }
    std::array<double, 6> sq;
    for (int e = 0; e < 6; ++e) sq[static_cast<std::size_t>(e)] = q.d[static_cast<std::size_t>(e)] * q.d[static_cast<std::size_t>(e)];
    const double total = sq[0] + sq[1] + sq[2] + sq[3] + sq[4] + sq[5];

    // pair edge indices: (0,5), (1,4), (2,3)
    const std::array<std::array<int, 2>, 3> pair = {{{0, 5}, {1, 4}, {2, 3}}};
    double worst_qi = std::numeric_limits<double>::infinity();
    double worst_cosq = std::numeric_limits<double>::infinity();
    for (int r = 0; r < 3; ++r) {
        const auto [a, b] = pair[static_cast<std::size_t>(r)];
        const double lhs2 = sq[static_cast<std::size_t>(a)] + sq[static_cast<std::size_t>(b)];
        const double qi_slack = (total - lhs2) - lhs2;
        worst_qi = std::min(worst_qi, qi_slack);
        for (int other = 0; other < 3; ++other) {
            if (other == r) continue;
            const auto [u, v] = pair[static_cast<std::size_t>(other)];
            const double t = q.d[static_cast<std::size_t>(u)] - q.d[static_cast<std::size_t>(v)];
            // replacing u^2+v^2 by 2uv subtracts (u-v)^2, which is
            // nonnegative in floating point as well
            worst_cosq = std::min(worst_cosq, qi_slack - t * t);
        }
    }
    const double norm = dmax * dmax;
    margin_qi = worst_qi / norm;
    margin_cosq = worst_cosq / norm;
}

double check_qi(const Quadruple& q) {
    double qi, cosq;
    qi_cosq_margins(q, qi, cosq);
    return qi;
}

double check_cosq(const Quadruple& q) {
    double qi, cosq;
    qi_cosq_margins(q, qi, cosq);
    return cosq;
}

QuadrupleReport report_quadruple(const Quadruple& q) {
    QuadrupleReport r;
    r.quadruple = q;
    r.margin_pt = check_pt(q);
    qi_cosq_margins(q, r.margin_qi, r.margin_cosq);
    return r;
}

} // namespace ptolemy
