// ptolemy: command-line front end for the four-point condition toolkit.
//
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 bad input or
// usage. Reports are JSON and byte-identical for identical flags regardless
// of --threads; wall time goes to stderr only.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptolemy/embedding.hpp"
#include "ptolemy/errors.hpp"
#include "ptolemy/io.hpp"
#include "ptolemy/quadruple.hpp"
#include "ptolemy/scan.hpp"
#include "ptolemy/search.hpp"
#include "ptolemy/spaces.hpp"
#include "ptolemy/strip_analysis.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace ptolemy;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

void emit_report(const ordered_json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

StripSpec parse_family(const std::string& family_text, StripSpec spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : family_text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    const std::string& name = parts[0];
    auto arg = [&](std::size_t i, double fallback) {
        return parts.size() > i ? std::stod(parts[i]) : fallback;
    };
    if (name == "euclidean") {
        spec.family = StripFamily::euclidean;
    } else if (name == "lp") {
        spec.family = StripFamily::lp;
        spec.p = arg(1, 4.0);
    } else if (name == "snowflake") {
        spec.family = StripFamily::snowflake;
        spec.eps = arg(1, 0.5);
    } else if (name == "conformal") {
        spec.family = StripFamily::conformal;
        spec.bump_height = arg(1, spec.bump_height);
        spec.bump_radius = arg(2, spec.bump_radius);
    } else {
        throw error(errc::bad_spec, "unknown family '" + name + "'");
    }
    return spec;
}

ordered_json witness_json(const Quadruple& q, const FiniteMetricSpace& space) {
    ordered_json w;
    w["indices"] = q.idx;
    ordered_json labels = ordered_json::array();
    for (int i : q.idx) labels.push_back(space.labels[static_cast<std::size_t>(i)]);
    w["labels"] = labels;
    w["distances"] = q.d;
    return w;
}

ordered_json inputs_json(const fs::path& path) {
    ordered_json j;
    j["path"] = path.string();
    j["digest"] = digest_hex(read_text_file(path));
    return j;
}

std::vector<Condition> parse_conditions(const std::string& text) {
    std::vector<Condition> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (cur == "pt")
            out.push_back(Condition::PT);
        else if (cur == "qi")
            out.push_back(Condition::QI);
        else if (cur == "cosq")
            out.push_back(Condition::COSQ);
        else
            throw error(errc::bad_input, "unknown condition '" + cur + "'");
        cur.clear();
    };
    for (char c : text) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    if (out.empty()) throw error(errc::bad_input, "no conditions requested");
    return out;
}

int run_check(const std::string& file, const std::string& conditions_text, double tol, int threads,
              const std::string& out_path, bool classify_mode) {
    Timer timer;
    const fs::path path(file);
    const FiniteMetricSpace space = read_metric_file(path);
    const std::vector<Condition> conditions = parse_conditions(conditions_text);
    ScanOptions opt;
    opt.threads = threads;
    const auto reports = scan(space, conditions, opt);

    ordered_json j;
    j["schema"] = 1;
    j["command"] = classify_mode ? "check" : "scan";
    j["inputs"] = inputs_json(path);
    j["n"] = space.n();
    j["tol"] = tol;
    ordered_json checks = ordered_json::array();
    bool all_pass = true;
    for (const auto& rep : reports) {
        const bool pass = rep.worst_margin >= -tol;
        all_pass = all_pass && pass;
        ordered_json c;
        c["condition"] = condition_name(rep.condition);
        c["pass"] = pass;
        c["worst_margin"] = rep.worst_margin;
        c["count_checked"] = rep.count_checked;
        c["count_violations"] = rep.count_violations;
        c["witness"] = witness_json(rep.witness, space);
        checks.push_back(c);
    }
    j["checks"] = checks;
    j["pass"] = all_pass;
    emit_report(j, out_path);
    std::cerr << "check: " << (all_pass ? "pass" : "FAIL") << " wall_ms=" << timer.ms() << "\n";
    return all_pass ? 0 : 1;
}

int run_embed(const std::string& file, int basepoint, const std::string& out_path) {
    Timer timer;
    const fs::path path(file);
    const FiniteMetricSpace space = read_metric_file(path);
    const EmbeddingResult res = embed(space, basepoint);
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "embed";
    j["inputs"] = inputs_json(path);
    j["n"] = space.n();
    j["embeddable"] = res.embeddable;
    j["min_eigenvalue"] = res.min_eigenvalue;
    j["dimension"] = res.dimension;
    j["residual"] = res.residual;
    ordered_json coords = ordered_json::array();
    for (int i = 0; i < res.n; ++i) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < res.dimension; ++c) row.push_back(res.coord(i, c));
        coords.push_back(row);
    }
    j["coordinates"] = coords;
    emit_report(j, out_path);
    std::cerr << "embed: " << (res.embeddable ? "embeddable" : "not embeddable") << " wall_ms=" << timer.ms() << "\n";
    return 0;
}

int run_strip_verify(const StripSpec& spec, int threads, const std::string& out_path) {
    Timer timer;
    const BatteryReport rep = run_battery(spec, threads);
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "strip-verify";
    ordered_json sj;
    sj["family"] = family_name(spec.family);
    sj["a"] = spec.a;
    sj["T"] = spec.T;
    sj["nt"] = spec.nt;
    sj["ns"] = spec.ns;
    if (spec.family == StripFamily::lp) sj["p"] = spec.p;
    if (spec.family == StripFamily::snowflake) sj["eps"] = spec.eps;
    if (spec.family == StripFamily::conformal) {
        sj["bump_height"] = spec.bump_height;
        sj["bump_radius"] = spec.bump_radius;
        sj["kring"] = spec.kring;
    }
    j["spec"] = sj;
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["asserted"] = c.asserted;
        cj["pass"] = c.pass;
        cj["value"] = c.value;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["pass"] = rep.all_pass;
    emit_report(j, out_path);
    std::cerr << "strip-verify: " << (rep.all_pass ? "pass" : "FAIL") << " wall_ms=" << timer.ms() << "\n";
    return rep.all_pass ? 0 : 1;
}

int run_search(std::uint64_t budget, std::uint64_t seed, const std::string& signature, int threads,
               const std::string& out_path) {
    Timer timer;
    const SignatureQuery query = parse_signature_query(signature);
    HuntOptions opt;
    opt.threads = threads;
    const std::vector<Witness> found = hunt(budget, seed, query, opt);
    if (!out_path.empty()) save_witnesses(out_path, found);
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "search";
    j["budget"] = budget;
    j["seed"] = seed;
    j["signature"] = signature;
    j["found"] = found.size();
    if (out_path.empty()) {
        std::cout << witnesses_to_json(found);
    } else {
        std::cout << j.dump(2) << "\n";
    }
    std::cerr << "search: " << found.size() << " witnesses wall_ms=" << timer.ms() << "\n";
    return 0;
}

int run_catalog(const std::string& dir, double e2_a, const std::string& format) {
    fs::create_directories(dir);
    for (const auto& [name, space] : catalog(e2_a)) {
        std::string base = name;
        for (char& c : base)
            if (c == '(' || c == ')' || c == '.') c = '_';
        std::transform(base.begin(), base.end(), base.begin(), [](unsigned char c) { return std::tolower(c); });
        const fs::path path = fs::path(dir) / (base + (format == "csv" ? ".csv" : ".json"));
        write_metric_file(path, space);
        std::cout << path.string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-point curvature conditions on finite metric spaces"};
    app.require_subcommand(1);

    // check / scan
    std::string file, conditions = "pt,qi,cosq", out_path;
    double tol = kClassTol;
    int threads = 0;
    auto* check_cmd = app.add_subcommand("check", "classify a metric file against the 4-point conditions");
    check_cmd->add_option("file", file)->required();
    check_cmd->add_option("--conditions", conditions, "comma list of pt,qi,cosq");
    check_cmd->add_option("--tol", tol, "membership tolerance");
    check_cmd->add_option("--threads", threads, "worker count (0 = auto)");
    check_cmd->add_option("--out", out_path, "write the JSON report here");

    auto* scan_cmd = app.add_subcommand("scan", "exhaustive quadruple scan with witnesses");
    scan_cmd->add_option("file", file)->required();
    scan_cmd->add_option("--conditions", conditions);
    scan_cmd->add_option("--tol", tol);
    scan_cmd->add_option("--threads", threads);
    scan_cmd->add_option("--out", out_path);

    auto* validate_cmd = app.add_subcommand("validate", "check the metric axioms of a file");
    validate_cmd->add_option("file", file)->required();
    validate_cmd->add_option("--out", out_path);

    int basepoint = 0;
    auto* embed_cmd = app.add_subcommand("embed", "Euclidean embeddability via the Gram spectrum");
    embed_cmd->add_option("file", file)->required();
    embed_cmd->add_option("--basepoint", basepoint);
    embed_cmd->add_option("--out", out_path);

    // gen
    std::string family_text = "euclidean", random_gen, gen_format = "json";
    StripSpec spec;
    std::uint64_t seed = 0;
    int rand_n = 4;
    auto* gen_cmd = app.add_subcommand("gen", "emit a metric file (strip sample or random space)");
    gen_cmd->add_option("--family", family_text, "euclidean | lp:p | snowflake:eps | conformal[:h[:r]]");
    gen_cmd->add_option("--a", spec.a, "strip width");
    gen_cmd->add_option("--T", spec.T, "strip half-length");
    gen_cmd->add_option("--nt", spec.nt);
    gen_cmd->add_option("--ns", spec.ns);
    gen_cmd->add_option("--k", spec.kring, "conformal graph ring radius");
    gen_cmd->add_option("--random", random_gen, "shifted-uniform | graph-metric | perturbed-euclidean");
    gen_cmd->add_option("--n", rand_n, "random space size");
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--format", gen_format, "json | csv");
    gen_cmd->add_option("--out", out_path, "output file")->required();

    auto* strip_cmd = app.add_subcommand("strip-verify", "run the full strip battery");
    strip_cmd->add_option("--family", family_text);
    strip_cmd->add_option("--a", spec.a);
    strip_cmd->add_option("--T", spec.T);
    strip_cmd->add_option("--nt", spec.nt);
    strip_cmd->add_option("--ns", spec.ns);
    strip_cmd->add_option("--k", spec.kring);
    strip_cmd->add_option("--threads", threads);
    strip_cmd->add_option("--out", out_path);

    std::uint64_t budget = 100000;
    std::string signature = "pt=1,qi=0,cosq=0";
    auto* search_cmd = app.add_subcommand("search", "hunt for 4-point class separations");
    search_cmd->add_option("--budget", budget);
    search_cmd->add_option("--seed", seed);
    search_cmd->add_option("--signature", signature, "e.g. pt=1,qi=0,cosq=*");
    search_cmd->add_option("--threads", threads);
    search_cmd->add_option("--out", out_path, "witness catalog path");

    std::string emit_dir = ".";
    double e2_a = 1.9;
    auto* catalog_cmd = app.add_subcommand("catalog", "write the named reference spaces");
    catalog_cmd->add_option("--emit", emit_dir, "output directory");
    catalog_cmd->add_option("--e2-a", e2_a, "E2 long-distance parameter, 1 < a < 2");
    catalog_cmd->add_option("--format", gen_format, "json | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (check_cmd->parsed()) return run_check(file, conditions, tol, threads, out_path, true);
        if (scan_cmd->parsed()) return run_check(file, conditions, tol, threads, out_path, false);
        if (validate_cmd->parsed()) {
            const fs::path path(file);
            const FiniteMetricSpace space = read_metric_file(path);
            ordered_json j;
            j["schema"] = 1;
            j["command"] = "validate";
            j["inputs"] = inputs_json(path);
            j["n"] = space.n();
            j["pass"] = true;
            emit_report(j, out_path);
            return 0;
        }
        if (embed_cmd->parsed()) return run_embed(file, basepoint, out_path);
        if (gen_cmd->parsed()) {
            FiniteMetricSpace space;
            if (!random_gen.empty()) {
                RandomGenerator g;
                if (random_gen == "shifted-uniform")
                    g = RandomGenerator::shifted_uniform;
                else if (random_gen == "graph-metric")
                    g = RandomGenerator::graph_metric;
                else if (random_gen == "perturbed-euclidean")
                    g = RandomGenerator::perturbed_euclidean;
                else
                    throw error(errc::bad_input, "unknown generator '" + random_gen + "'");
                space = random_metric(rand_n, seed, g);
            } else {
                space = strip_sample(parse_family(family_text, spec)).space;
            }
            if (gen_format == "csv")
                write_text_file(out_path, metric_to_csv(space));
            else
                write_text_file(out_path, metric_to_json(space));
            std::cout << out_path << "\n";
            return 0;
        }
        if (strip_cmd->parsed()) return run_strip_verify(parse_family(family_text, spec), threads, out_path);
        if (search_cmd->parsed()) return run_search(budget, seed, signature, threads, out_path);
        if (catalog_cmd->parsed()) return run_catalog(emit_dir, e2_a, gen_format);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
