#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "ptolemy/errors.hpp"
#include "ptolemy/quadruple.hpp"
#include "ptolemy/rng.hpp"
#include "ptolemy/scan.hpp"
#include "ptolemy/spaces.hpp"

using namespace ptolemy;

namespace {

Quadruple random_quadruple(Rng& rng) {
    // six i.i.d. distances in [1,2]; the triangle inequality holds for any
    // assignment since 1 + 1 >= 2
    std::array<double, 6> d;
    for (double& v : d) v = rng.uniform(1.0, 2.0);
    return quadruple_from_distances(d);
}

// brute-force margins over all 24 relabelings, evaluating the raw
// inequalities directly; the oracle against which the role reduction in
// check_pt / check_qi / check_cosq is tested
struct BruteMargins {
    double pt, qi, cosq;
};

BruteMargins brute_margins(const FiniteMetricSpace& s) {
    std::array<int, 4> p{0, 1, 2, 3};
    double pt = 1e300, qi = 1e300, cosq = 1e300;
    double dmax = 0, pmax = 0;
    do {
        const double xy = s.d(p[0], p[1]), zw = s.d(p[2], p[3]);
        const double xz = s.d(p[0], p[2]), yw = s.d(p[1], p[3]);
        const double xw = s.d(p[0], p[3]), yz = s.d(p[1], p[2]);
        pt = std::min(pt, xz * yw + xw * yz - xy * zw);
        qi = std::min(qi, xz * xz + yw * yw + xw * xw + yz * yz - xy * xy - zw * zw);
        cosq = std::min(cosq, xz * xz + yw * yw + 2 * xw * yz - xy * xy - zw * zw);
        dmax = std::max({dmax, xy, zw, xz, yw, xw, yz});
        pmax = std::max(pmax, xy * zw);
    } while (std::next_permutation(p.begin(), p.end()));
    return {pt / pmax, qi / (dmax * dmax), cosq / (dmax * dmax)};
}

FiniteMetricSpace space_from_quadruple(const Quadruple& q) {
    const auto& d = q.d;
    return validate_metric(std::vector<std::vector<double>>{{0, d[0], d[1], d[2]},
                                                            {d[0], 0, d[3], d[4]},
                                                            {d[1], d[3], 0, d[5]},
                                                            {d[2], d[4], d[5], 0}},
                           {});
}

} // namespace

TEST_CASE("validate_metric accepts valid spaces") {
    CHECK(validate_metric(std::vector<std::vector<double>>{{0}}, {}).n() == 1);
    const auto e1 = catalog_e1();
    CHECK(e1.n() == 4);
    CHECK(e1.d(0, 1) == 2.0);
    CHECK(e1.d(2, 3) == 1.0);
}

TEST_CASE("validate_metric rejects each axiom violation with indices") {
    auto expect = [](std::vector<std::vector<double>> m, errc code) {
        try {
            validate_metric(m, {});
            FAIL("expected a validation error");
        } catch (const error& e) {
            CHECK(e.code() == code);
            CHECK(!e.indices().empty());
        }
    };
    expect({{0, 3}, {2, 0}}, errc::asymmetric_matrix);
    expect({{0, -1}, {-1, 0}}, errc::negative_distance);
    expect({{1, 1}, {1, 0}}, errc::nonzero_diagonal);
    expect({{0, 0}, {0, 0}}, errc::zero_off_diagonal);
    expect({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, errc::triangle_violation);
}

TEST_CASE("pairing products") {
    const auto e1 = catalog_e1();
    const auto q = make_quadruple(e1, 0, 1, 2, 3);
    const auto [p1, p2, p3] = pairing_products(q);
    CHECK(p1 == 2.0); // the pairing through the long edge
    CHECK(p2 == 1.0);
    CHECK(p3 == 1.0);

    auto sq = pairing_products(make_quadruple(catalog_square(), 0, 1, 2, 3));
    std::sort(sq.begin(), sq.end());
    CHECK(sq[0] == doctest::Approx(1.0));
    CHECK(sq[1] == doctest::Approx(1.0));
    CHECK(sq[2] == doctest::Approx(2.0));

    const auto c = pairing_products(quadruple_from_distances({1.3, 1.3, 1.3, 1.3, 1.3, 1.3}));
    CHECK(c[0] == c[1]);
    CHECK(c[1] == c[2]);
}

TEST_CASE("check_pt frozen values") {
    CHECK(check_pt(make_quadruple(catalog_e1(), 0, 1, 2, 3)) == 0.0); // equality: 2 = 1 + 1
    CHECK(check_pt(make_quadruple(catalog_e2(1.9), 0, 1, 2, 3)) == doctest::Approx(-0.05).epsilon(1e-12));
    // concyclic points give Ptolemy equality
    CHECK(std::abs(check_pt(make_quadruple(catalog_square(), 0, 1, 2, 3))) <= 1e-12);
}

TEST_CASE("check_qi frozen values") {
    CHECK(check_qi(make_quadruple(catalog_e1(), 0, 1, 2, 3)) == -0.25);
    CHECK(check_qi(make_quadruple(catalog_tetrahedron(), 0, 1, 2, 3)) == 2.0);
    CHECK(check_qi(quadruple_from_distances({1.7, 1.7, 1.7, 1.7, 1.7, 1.7})) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("check_cosq frozen values") {
    CHECK(check_cosq(make_quadruple(catalog_e2(1.9), 0, 1, 2, 3)) == doctest::Approx(0.1025).epsilon(1e-12));
    CHECK(check_cosq(make_quadruple(catalog_e1(), 0, 1, 2, 3)) == -0.25);
    CHECK(check_cosq(make_quadruple(catalog_tetrahedron(), 0, 1, 2, 3)) == 2.0);
}

TEST_CASE("role reduction matches the 24-permutation brute force") {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const Quadruple q = random_quadruple(rng);
        const auto space = space_from_quadruple(q);
        const auto brute = brute_margins(space);
        CHECK(check_pt(q) == doctest::Approx(brute.pt).epsilon(1e-12));
        CHECK(check_qi(q) == doctest::Approx(brute.qi).epsilon(1e-12));
        CHECK(check_cosq(q) == doctest::Approx(brute.cosq).epsilon(1e-12));
    }
}

TEST_CASE("margins are relabeling and scale invariant") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const Quadruple q = random_quadruple(rng);
        const auto space = space_from_quadruple(q);
        const double pt0 = check_pt(q), qi0 = check_qi(q), cosq0 = check_cosq(q);

        std::array<int, 4> p{0, 1, 2, 3};
        do {
            std::array<double, 6> d = {space.d(p[0], p[1]), space.d(p[0], p[2]), space.d(p[0], p[3]),
                                       space.d(p[1], p[2]), space.d(p[1], p[3]), space.d(p[2], p[3])};
            const Quadruple qq = quadruple_from_distances(d);
            CHECK(check_pt(qq) == doctest::Approx(pt0).epsilon(1e-12));
            CHECK(check_qi(qq) == doctest::Approx(qi0).epsilon(1e-12));
            CHECK(check_cosq(qq) == doctest::Approx(cosq0).epsilon(1e-12));
        } while (std::next_permutation(p.begin(), p.end()));

        for (double lambda : {0.5, 3.7, 128.0}) {
            auto d = q.d;
            for (double& v : d) v *= lambda;
            const Quadruple qq = quadruple_from_distances(d);
            CHECK(check_pt(qq) == doctest::Approx(pt0).epsilon(1e-12));
            CHECK(check_qi(qq) == doctest::Approx(qi0).epsilon(1e-12));
            CHECK(check_cosq(qq) == doctest::Approx(cosq0).epsilon(1e-12));
        }
    }
}

TEST_CASE("qi margin dominates cosq margin on 1e5 random quadruples") {
    Rng rng(5);
    for (int trial = 0; trial < 100000; ++trial) {
        const Quadruple q = random_quadruple(rng);
        double qi, cosq;
        qi_cosq_margins(q, qi, cosq);
        REQUIRE(qi >= cosq);
    }
}

TEST_CASE("euclidean quadruples satisfy all three conditions") {
    Rng rng(11);
    for (int trial = 0; trial < 20000; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(5));
        std::array<std::array<double, 6>, 4> pts{};
        for (auto& p : pts)
            for (int c = 0; c < dim; ++c) p[static_cast<std::size_t>(c)] = rng.uniform(-1.0, 1.0);
        auto dist = [&](int a, int b) {
            double s = 0;
            for (int c = 0; c < dim; ++c) {
                const double diff = pts[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] -
                                    pts[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
                s += diff * diff;
            }
            return std::sqrt(s);
        };
        const Quadruple q = quadruple_from_distances(
            {dist(0, 1), dist(0, 2), dist(0, 3), dist(1, 2), dist(1, 3), dist(2, 3)});
        double qi, cosq;
        qi_cosq_margins(q, qi, cosq);
        REQUIRE(check_pt(q) >= -1e-12);
        REQUIRE(qi >= -1e-12);
        REQUIRE(cosq >= -1e-12);
    }
}

TEST_CASE("scan on E1 and the small-space contract") {
    const auto reports = scan(catalog_e1(), {Condition::PT, Condition::QI, Condition::COSQ});
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].worst_margin == 0.0);
    CHECK(reports[1].worst_margin == -0.25);
    CHECK(reports[2].worst_margin == -0.25);
    for (const auto& r : reports) {
        CHECK(r.count_checked == 1);
        CHECK((r.worst_margin < 0) == (r.count_violations > 0));
        CHECK(r.witness.idx == std::array<int, 4>{0, 1, 2, 3});
    }

    const auto three = validate_metric(std::vector<std::vector<double>>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {});
    CHECK_THROWS_AS((void)scan(three, {Condition::PT}), error);
}

TEST_CASE("scan is deterministic across worker counts") {
    const auto space = random_metric(40, 123, RandomGenerator::shifted_uniform);
    ScanOptions one;
    one.threads = 1;
    ScanOptions four;
    four.threads = 4;
    ScanOptions seven;
    seven.threads = 7;
    const auto a = scan(space, {Condition::PT, Condition::QI, Condition::COSQ}, one);
    const auto b = scan(space, {Condition::PT, Condition::QI, Condition::COSQ}, four);
    const auto c = scan(space, {Condition::PT, Condition::QI, Condition::COSQ}, seven);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].worst_margin == b[i].worst_margin);
        CHECK(a[i].worst_margin == c[i].worst_margin);
        CHECK(a[i].witness == b[i].witness);
        CHECK(a[i].witness == c[i].witness);
        CHECK(a[i].count_violations == b[i].count_violations);
        CHECK(a[i].count_violations == c[i].count_violations);
    }
}

TEST_CASE("quadruple enumeration is the inverse of unranking") {
    const int n = 9;
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    const auto q = quadruple_at(rank, n);
                    CHECK(q == std::array<int, 4>{i, j, k, l});
                    ++rank;
                }
    CHECK(rank == quadruple_count(n));
}

TEST_CASE("classify reproduces the class separations") {
    const auto ce1 = classify(catalog_e1());
    CHECK(ce1.in_pt);
    CHECK_FALSE(ce1.in_qi);
    CHECK_FALSE(ce1.in_cosq);
    CHECK(ce1.qi.witness.idx == std::array<int, 4>{0, 1, 2, 3});

    const auto ce2 = classify(catalog_e2(1.9));
    CHECK_FALSE(ce2.in_pt);
    CHECK(ce2.in_qi);
    CHECK(ce2.in_cosq);

    const auto csq = classify(catalog_square());
    CHECK(csq.in_pt);
    CHECK(csq.in_qi);
    CHECK(csq.in_cosq);
}
