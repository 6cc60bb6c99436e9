#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ptolemy/errors.hpp"
#include "ptolemy/rng.hpp"
#include "ptolemy/search.hpp"
#include "ptolemy/spaces.hpp"

using namespace ptolemy;
namespace fs = std::filesystem;

namespace {

FiniteMetricSpace permuted(const FiniteMetricSpace& s, const std::array<int, 4>& p) {
    std::vector<std::vector<double>> rows(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s.d(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    return validate_metric(rows, {});
}

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / (std::string("ptolemy_test_") + name);
}

} // namespace

TEST_CASE("canonical vector is permutation invariant") {
    const auto e1 = catalog_e1();
    const auto canon = canonicalize(e1);
    std::array<int, 4> p{0, 1, 2, 3};
    do {
        CHECK(canonicalize(permuted(e1, p)) == canon);
    } while (std::next_permutation(p.begin(), p.end()));

    CHECK(canonicalize(catalog_e1()) != canonicalize(catalog_e2(1.9)));
}

TEST_CASE("canonicalization invariance on random spaces") {
    Rng rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto s = random_metric(4, rng.raw(), RandomGenerator::shifted_uniform);
        const auto canon = canonicalize(s);
        // one deterministic non-identity relabeling per trial
        std::array<int, 4> perm{1, 3, 0, 2};
        std::rotate(perm.begin(), perm.begin() + trial % 4, perm.end());
        CHECK(canonicalize(permuted(s, perm)) == canon);
    }
}

TEST_CASE("signature query parsing") {
    const auto q = parse_signature_query("pt=1,qi=0,cosq=*");
    CHECK(q.pt == true);
    CHECK(q.qi == false);
    CHECK_FALSE(q.cosq.has_value());
    CHECK(q.matches({true, false, false}));
    CHECK(q.matches({true, false, true}));
    CHECK_FALSE(q.matches({false, false, false}));

    CHECK_THROWS_AS((void)parse_signature_query("pt=2"), error);
    CHECK_THROWS_AS((void)parse_signature_query("bad=1"), error);
}

TEST_CASE("hunt finds the documented separations") {
    // PT without QI: E1-like shapes are in the shifted-uniform support
    SignatureQuery pt_not_qi;
    pt_not_qi.pt = true;
    pt_not_qi.qi = false;
    const auto a = hunt(60000, 2, pt_not_qi);
    CHECK(!a.empty());
    for (const auto& w : a) {
        CHECK(w.signature.pt);
        CHECK_FALSE(w.signature.qi);
        CHECK(w.margin_pt >= -1e-12);
        CHECK(w.margin_qi < 0);
    }

    // everything passes: euclidean-like quadruples are abundant
    SignatureQuery all_pass;
    all_pass.pt = true;
    all_pass.qi = true;
    all_pass.cosq = true;
    CHECK(!hunt(300, 3, all_pass).empty());

    // the forbidden signature never appears
    SignatureQuery forbidden;
    forbidden.qi = false;
    forbidden.cosq = true;
    CHECK(hunt(20000, 4, forbidden).empty());
}

TEST_CASE("hunt is deterministic and worker-count independent") {
    SignatureQuery any;
    HuntOptions one;
    one.threads = 1;
    HuntOptions three;
    three.threads = 3;
    const auto a = hunt(4000, 11, any, one);
    const auto b = hunt(4000, 11, any, three);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].canonical == b[i].canonical);
        CHECK(a[i].sample_index == b[i].sample_index);
        CHECK(a[i].generator == b[i].generator);
    }
}

TEST_CASE("witness store round trip is bit exact") {
    SignatureQuery any;
    const auto list = hunt(500, 21, any);
    REQUIRE(!list.empty());
    const auto path = temp_file("catalog.json");
    save_witnesses(path, list);
    const auto loaded = load_witnesses(path);
    REQUIRE(loaded.size() == list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        CHECK(loaded[i].canonical == list[i].canonical); // bit exact through text
        CHECK(loaded[i].margin_pt == list[i].margin_pt);
        CHECK(loaded[i].signature == list[i].signature);
        for (std::size_t k = 0; k < 16; ++k) CHECK(loaded[i].space.dist[k] == list[i].space.dist[k]);
    }
    fs::remove(path);
}

TEST_CASE("corrupt catalogs are rejected") {
    const auto path = temp_file("bad.json");
    {
        std::ofstream out(path);
        out << "{\"schema\": 1, \"witnesses\": [{\"matrix\": [[0, 1";
    }
    CHECK_THROWS_AS((void)load_witnesses(path), error);
    fs::remove(path);

    CHECK_THROWS_AS((void)witnesses_from_json("{\"schema\": 1}"), error);
}

TEST_CASE("merging stores dedups by isometry class") {
    SignatureQuery any;
    const auto a = hunt(800, 5, any);
    const auto b = hunt(800, 5, any); // identical run
    const auto merged = merge_witnesses(a, b);
    CHECK(merged.size() == a.size());

    // a rescaled copy of a witness is the same isometry class
    auto scaled = a;
    for (auto& w : scaled) {
        for (auto& v : w.space.dist) v *= 2.0;
        for (auto& v : w.canonical) v *= 2.0;
    }
    CHECK(merge_witnesses(a, scaled).size() == a.size());
}

TEST_CASE("witnesses never pair cosq with a qi failure") {
    SignatureQuery any;
    for (const auto& w : hunt(30000, 33, any)) {
        CHECK(w.margin_qi >= w.margin_cosq);
        if (w.signature.cosq) CHECK(w.signature.qi);
    }
}
