#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "ptolemy/io.hpp"
#include "ptolemy/search.hpp"

#ifndef PTOLEMY_CLI_PATH
#error "PTOLEMY_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Workdir {
    fs::path dir;
    Workdir() {
        dir = fs::temp_directory_path() / ("ptolemy_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Workdir() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(PTOLEMY_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return status < 0 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const std::string& path) { return ptolemy::read_text_file(path); }

} // namespace

TEST_CASE("catalog emission, validation and the exit-code contract") {
    Workdir wd;
    REQUIRE(run("catalog --emit " + wd.dir.string()) == 0);
    REQUIRE(fs::exists(wd / "e1.json"));
    REQUIRE(fs::exists(wd / "e2_1_9_.json"));
    REQUIRE(fs::exists(wd / "square.json"));
    REQUIRE(fs::exists(wd / "tetrahedron.json"));

    CHECK(run("validate " + (wd / "e1.json")) == 0);

    // E1: in the PT class, outside QI and cosq
    CHECK(run("check " + (wd / "e1.json") + " --conditions pt") == 0);
    CHECK(run("check " + (wd / "e1.json") + " --conditions qi") == 1);
    CHECK(run("check " + (wd / "e1.json") + " --conditions pt,qi") == 1);
    CHECK(run("check " + (wd / "square.json")) == 0);

    // emitted files round trip bit-exactly through the validator
    const auto before = slurp(wd / "square.json");
    const auto space = ptolemy::read_metric_file(wd / "square.json");
    CHECK(ptolemy::metric_to_json(space) == before);
}

TEST_CASE("input errors exit with code 2") {
    Workdir wd;
    CHECK(run("check " + (wd / "missing.json")) == 2);
    {
        std::ofstream bad(wd / "bad.csv");
        bad << "0,3\n2,0\n";
    }
    CHECK(run("check " + (wd / "bad.csv")) == 2);
    CHECK(run("gen --family nosuch --out " + (wd / "x.json")) == 2);
}

TEST_CASE("gen then check round trip") {
    Workdir wd;
    REQUIRE(run("gen --family euclidean --a 1 --T 2 --nt 7 --ns 3 --out " + (wd / "strip.json")) == 0);
    CHECK(run("check " + (wd / "strip.json")) == 0);

    REQUIRE(run("gen --family lp:4 --a 1 --T 2 --nt 7 --ns 3 --out " + (wd / "lp.csv") + " --format csv") == 0);
    CHECK(run("check " + (wd / "lp.csv")) == 1); // PT fails for p != 2

    REQUIRE(run("gen --random shifted-uniform --n 6 --seed 3 --out " + (wd / "rand.json")) == 0);
    CHECK(run("validate " + (wd / "rand.json")) == 0);
}

TEST_CASE("strip-verify reports and exit codes") {
    Workdir wd;
    REQUIRE(run("strip-verify --family euclidean --a 1 --T 5 --nt 21 --ns 5 --out " + (wd / "euclid.json")) == 0);
    const auto rep = json::parse(slurp(wd / "euclid.json"));
    CHECK(rep.at("schema") == 1);
    CHECK(rep.at("pass") == true);
    bool saw_pt = false;
    for (const auto& c : rep.at("checks"))
        if (c.at("name") == "scan-pt") {
            saw_pt = true;
            CHECK(c.at("pass") == true);
        }
    CHECK(saw_pt);

    REQUIRE(run("strip-verify --family lp:4 --a 1 --T 5 --nt 21 --ns 5 --out " + (wd / "lp.json")) == 0);
    const auto lp = json::parse(slurp(wd / "lp.json"));
    CHECK(lp.at("pass") == true); // the expected-violation checks pass
    for (const auto& c : lp.at("checks")) {
        if (c.at("name") == "scan-pt") CHECK(c.at("value").get<double>() < -1e-4);
        if (c.at("name") == "flat-conclusion") CHECK(c.at("value").get<double>() > 0.4);
    }
}

TEST_CASE("reports are byte-identical across thread counts") {
    Workdir wd;
    REQUIRE(run("gen --family euclidean --a 1 --T 2 --nt 11 --ns 3 --out " + (wd / "s.json")) == 0);
    REQUIRE(run("scan " + (wd / "s.json") + " --threads 1 --out " + (wd / "r1.json")) == 0);
    REQUIRE(run("scan " + (wd / "s.json") + " --threads 2 --out " + (wd / "r2.json")) == 0);
    REQUIRE(run("scan " + (wd / "s.json") + " --threads 8 --out " + (wd / "r8.json")) == 0);
    CHECK(slurp(wd / "r1.json") == slurp(wd / "r2.json"));
    CHECK(slurp(wd / "r1.json") == slurp(wd / "r8.json"));
}

TEST_CASE("search subcommand writes a loadable catalog") {
    Workdir wd;
    REQUIRE(run("search --budget 3000 --seed 7 --signature pt=1,qi=0,cosq=0 --out " + (wd / "cat.json")) == 0);
    const auto witnesses = ptolemy::load_witnesses(wd / "cat.json");
    for (const auto& w : witnesses) {
        CHECK(w.signature.pt);
        CHECK_FALSE(w.signature.qi);
        CHECK_FALSE(w.signature.cosq);
    }

    REQUIRE(run("search --budget 3000 --seed 7 --signature pt=1,qi=0,cosq=0 --threads 3 --out " +
                (wd / "cat3.json")) == 0);
    CHECK(slurp(wd / "cat.json") == slurp(wd / "cat3.json"));
}

TEST_CASE("catalog --e2-a below the cosq window classifies as a cosq failure") {
    Workdir wd;
    REQUIRE(run("catalog --emit " + wd.dir.string() + " --e2-a 1.5") == 0);
    REQUIRE(fs::exists(wd / "e2_1_5_.json"));
    CHECK(run("check " + (wd / "e2_1_5_.json") + " --conditions cosq") == 1);
    CHECK(run("check " + (wd / "e2_1_5_.json") + " --conditions qi") == 0);
}

TEST_CASE("embed subcommand") {
    Workdir wd;
    REQUIRE(run("catalog --emit " + wd.dir.string()) == 0);
    REQUIRE(run("embed " + (wd / "square.json") + " --out " + (wd / "emb.json")) == 0);
    const auto rep = json::parse(slurp(wd / "emb.json"));
    CHECK(rep.at("embeddable") == true);
    CHECK(rep.at("dimension") == 2);
    CHECK(rep.at("residual").get<double>() < 1e-9);

    REQUIRE(run("embed " + (wd / "e1.json") + " --out " + (wd / "emb1.json")) == 0);
    CHECK(json::parse(slurp(wd / "emb1.json")).at("embeddable") == false);
}
