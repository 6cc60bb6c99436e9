#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ptolemy/errors.hpp"
#include "ptolemy/scan.hpp"
#include "ptolemy/spaces.hpp"

using namespace ptolemy;

TEST_CASE("euclidean strip sample has exact closed-form distances") {
    StripSpec spec; // a=1 T=5 21x5
    const auto chart = strip_sample(spec);
    REQUIRE(chart.points.size() == 105);
    const int a = chart.index(0, 0);       // (-5, 0)
    const int b = chart.index(20, 4);      // (5, 1)
    CHECK(chart.space.d(a, b) == std::sqrt(101.0));
    CHECK(chart.space.d(chart.index(0, 0), chart.index(2, 0)) == 1.0);
}

TEST_CASE("lp and snowflake closed forms") {
    StripSpec lp4;
    lp4.family = StripFamily::lp;
    lp4.p = 4;
    const auto c4 = strip_sample(lp4);
    const int o = c4.index(10, 0);  // (0, 0)
    const int d = c4.index(12, 4);  // (1, 1)
    CHECK(c4.space.d(o, d) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));

    StripSpec snow;
    snow.family = StripFamily::snowflake;
    snow.eps = 0.5;
    const auto cs = strip_sample(snow);
    CHECK(cs.space.d(cs.index(10, 0), cs.index(18, 0)) == 2.0); // sqrt(4)
}

TEST_CASE("snowflake(1) equals the euclidean family exactly") {
    StripSpec snow;
    snow.family = StripFamily::snowflake;
    snow.eps = 1.0;
    const auto a = strip_sample(snow);
    const auto b = strip_sample(StripSpec{});
    REQUIRE(a.space.dist.size() == b.space.dist.size());
    for (std::size_t i = 0; i < a.space.dist.size(); ++i) CHECK(a.space.dist[i] == b.space.dist[i]);
}

TEST_CASE("bad specs are rejected") {
    StripSpec s;
    s.nt = 1;
    CHECK_THROWS_AS((void)strip_sample(s), error);
    StripSpec p;
    p.family = StripFamily::lp;
    p.p = 0.5;
    CHECK_THROWS_AS((void)strip_sample(p), error);
    StripSpec e;
    e.family = StripFamily::snowflake;
    e.eps = 1.5;
    CHECK_THROWS_AS((void)strip_sample(e), error);
    StripSpec c;
    c.family = StripFamily::conformal;
    c.bump_radius = 0;
    CHECK_THROWS_AS((void)strip_sample(c), error);
}

TEST_CASE("catalog spaces") {
    const auto cat = catalog();
    REQUIRE(cat.size() == 4);
    CHECK(cat[0].first == "E1");
    CHECK(cat[1].first == "E2(1.9)");
    CHECK(cat[2].first == "square");
    CHECK(cat[3].first == "tetrahedron");

    const auto& e1 = cat[0].second;
    CHECK(e1.d(0, 1) == 2.0);
    CHECK(e1.d(0, 2) == 1.0);
    CHECK(e1.d(1, 3) == 1.0);

    const auto& e2 = cat[1].second;
    CHECK(e2.d(0, 1) == 2.0);
    CHECK(e2.d(2, 3) == 2.0);
    CHECK(e2.d(0, 2) == 1.0);
    CHECK(e2.d(0, 3) == 1.0);
    CHECK(e2.d(1, 2) == 1.9);
    CHECK(e2.d(1, 3) == 1.9);

    CHECK(std::abs(check_pt(make_quadruple(cat[2].second, 0, 1, 2, 3))) <= 1e-12);

    CHECK_THROWS_AS((void)catalog_e2(2.0), error);
    CHECK_THROWS_AS((void)catalog_e2(0.9), error);
}

TEST_CASE("E2 cosq membership window boundary is 2*sqrt(2)-1") {
    // (1+a)^2 >= 8 exactly when a >= 2 sqrt(2) - 1 ~ 1.8284
    CHECK(classify(catalog_e2(1.85)).in_cosq);
    CHECK_FALSE(classify(catalog_e2(1.5)).in_cosq);
    CHECK(check_cosq(make_quadruple(catalog_e2(1.5), 0, 1, 2, 3)) ==
          doctest::Approx((6.25 - 8.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("random metric generators") {
    const auto su = random_metric(6, 42, RandomGenerator::shifted_uniform);
    for (int i = 0; i < su.n(); ++i)
        for (int j = i + 1; j < su.n(); ++j) {
            CHECK(su.d(i, j) >= 1.0);
            CHECK(su.d(i, j) <= 2.0);
        }

    const auto gm = random_metric(6, 42, RandomGenerator::graph_metric);
    for (int i = 0; i < gm.n(); ++i)
        for (int j = 0; j < gm.n(); ++j)
            for (int k = 0; k < gm.n(); ++k) REQUIRE(gm.d(i, k) <= gm.d(i, j) + gm.d(j, k));

    const auto pe = random_metric(8, 7, RandomGenerator::perturbed_euclidean);
    for (int i = 0; i < pe.n(); ++i)
        for (int j = 0; j < pe.n(); ++j)
            for (int k = 0; k < pe.n(); ++k) REQUIRE(pe.d(i, k) <= pe.d(i, j) + pe.d(j, k));

    CHECK_THROWS_AS((void)random_metric(3, 0, RandomGenerator::shifted_uniform), error);
}

TEST_CASE("random metrics are reproducible") {
    for (auto g : {RandomGenerator::shifted_uniform, RandomGenerator::graph_metric,
                   RandomGenerator::perturbed_euclidean}) {
        const auto a = random_metric(7, 99, g);
        const auto b = random_metric(7, 99, g);
        REQUIRE(a.dist.size() == b.dist.size());
        for (std::size_t i = 0; i < a.dist.size(); ++i) CHECK(a.dist[i] == b.dist[i]);
        const auto c = random_metric(7, 100, g);
        bool same = true;
        for (std::size_t i = 0; i < a.dist.size(); ++i) same = same && a.dist[i] == c.dist[i];
        CHECK_FALSE(same);
    }
}

TEST_CASE("shifted uniform sampling reaches QI violations") {
    bool found = false;
    for (std::uint64_t seed = 0; seed < 3000 && !found; ++seed) {
        const auto s = random_metric(4, seed, RandomGenerator::shifted_uniform);
        found = check_qi(make_quadruple(s, 0, 1, 2, 3)) < 0;
    }
    CHECK(found);
}

TEST_CASE("small euclidean strip passes a full scan") {
    StripSpec spec;
    spec.T = 2;
    spec.nt = 9;
    spec.ns = 3;
    const auto chart = strip_sample(spec);
    for (const auto& rep : scan(chart.space, {Condition::PT, Condition::QI, Condition::COSQ}))
        CHECK(rep.worst_margin >= -1e-12);
}
