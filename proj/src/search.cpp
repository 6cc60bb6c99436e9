#include "ptolemy/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ptolemy/errors.hpp"
#include "ptolemy/io.hpp"
#include "ptolemy/parallel.hpp"
#include "ptolemy/quadruple.hpp"
#include "ptolemy/rng.hpp"

namespace ptolemy {

Canonical6 canonicalize(const FiniteMetricSpace& space) {
    if (space.n() != 4) throw error(errc::bad_input, "canonicalize requires exactly 4 points");
    static constexpr std::array<std::array<int, 4>, 24> perms = [] {
        std::array<std::array<int, 4>, 24> out{};
        std::array<int, 4> p{0, 1, 2, 3};
        for (std::size_t i = 0; i < 24; ++i) {
            out[i] = p;
            std::next_permutation(p.begin(), p.end());
        }
        return out;
    }();
    Canonical6 best{};
    bool first = true;
    for (const auto& p : perms) {
        const Canonical6 v = {space.d(p[0], p[1]), space.d(p[0], p[2]), space.d(p[0], p[3]),
                              space.d(p[1], p[2]), space.d(p[1], p[3]), space.d(p[2], p[3])};
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    return best;
}

SignatureQuery parse_signature_query(const std::string& text) {
    SignatureQuery q;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw error(errc::bad_input, "bad signature component '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        std::optional<bool> parsed;
        if (val == "1" || val == "true")
            parsed = true;
        else if (val == "0" || val == "false")
            parsed = false;
        else if (val == "*")
            parsed = std::nullopt;
        else
            throw error(errc::bad_input, "bad signature value '" + val + "'");
        if (key == "pt")
            q.pt = parsed;
        else if (key == "qi")
            q.qi = parsed;
        else if (key == "cosq")
            q.cosq = parsed;
        else
            throw error(errc::bad_input, "bad signature key '" + key + "'");
    }
    return q;
}

Witness make_witness(const FiniteMetricSpace& space, std::string generator, std::uint64_t seed,
                     std::uint64_t sample_index, double tol) {
    if (space.n() != 4) throw error(errc::bad_input, "witnesses are 4-point spaces");
    Witness w;
    w.space = space;
    const QuadrupleReport qr = report_quadruple(make_quadruple(space, 0, 1, 2, 3));
    w.margin_pt = qr.margin_pt;
    w.margin_qi = qr.margin_qi;
    w.margin_cosq = qr.margin_cosq;
    w.signature = {qr.margin_pt >= -tol, qr.margin_qi >= -tol, qr.margin_cosq >= -tol};
    w.canonical = canonicalize(space);
    w.generator = std::move(generator);
    w.seed = seed;
    w.sample_index = sample_index;
    return w;
}

namespace {

Canonical6 normalized(const Canonical6& c) {
    const double scale = *std::max_element(c.begin(), c.end());
    if (scale == 0) return c;
    Canonical6 out;
    for (std::size_t i = 0; i < 6; ++i) out[i] = c[i] / scale;
    return out;
}

bool canonical_close(const Canonical6& na, const Canonical6& nb) {
    for (std::size_t i = 0; i < 6; ++i)
        if (std::abs(na[i] - nb[i]) > 1e-9) return false;
    return true;
}

} // namespace

std::vector<Witness> dedup_witnesses(std::vector<Witness> list) {
    // sorted by scale-normalized canonical vector so the kept set does not
    // depend on arrival order
    std::vector<Canonical6> norm(list.size());
    std::vector<std::size_t> order(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        norm[i] = normalized(list[i].canonical);
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (norm[a] != norm[b]) return norm[a] < norm[b];
        if (list[a].seed != list[b].seed) return list[a].seed < list[b].seed;
        return list[a].sample_index < list[b].sample_index;
    });
    std::vector<Witness> kept;
    std::vector<Canonical6> kept_norm;
    for (std::size_t idx : order) {
        bool dup = false;
        for (const auto& kn : kept_norm)
            if (canonical_close(kn, norm[idx])) {
                dup = true;
                break;
            }
        if (!dup) {
            kept_norm.push_back(norm[idx]);
            kept.push_back(std::move(list[idx]));
        }
    }
    return kept;
}

std::vector<Witness> merge_witnesses(std::vector<Witness> a, const std::vector<Witness>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return dedup_witnesses(std::move(a));
}

std::vector<Witness> hunt(std::uint64_t budget, std::uint64_t seed, const SignatureQuery& target,
                          const HuntOptions& opt) {
    if (budget < 1) throw error(errc::bad_input, "budget must be >= 1");
    static constexpr std::array<RandomGenerator, 3> mix = {
        RandomGenerator::shifted_uniform, RandomGenerator::graph_metric, RandomGenerator::perturbed_euclidean};

    auto result = parallel_chunked(
        budget, opt.threads, std::vector<Witness>{},
        [&](std::vector<Witness>& found, std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t i = lo; i < hi; ++i) {
                const RandomGenerator g = mix[static_cast<std::size_t>(i % mix.size())];
                const FiniteMetricSpace s = random_metric(4, derive_seed(seed, i), g);
                Witness w = make_witness(s, generator_name(g), seed, i, opt.tol_class);
                if (w.signature.cosq && !w.signature.qi)
                    throw error(errc::bad_input, "impossible signature: cosq holds but qi fails");
                if (target.matches(w.signature)) found.push_back(std::move(w));
            }
        },
        [](std::vector<Witness>& acc, const std::vector<Witness>& part) {
            acc.insert(acc.end(), part.begin(), part.end());
        });
    return dedup_witnesses(std::move(result));
}

std::string witnesses_to_json(const std::vector<Witness>& list) {
    std::ostringstream out;
    out << "{\n  \"schema\": 1,\n  \"witnesses\": [\n";
    for (std::size_t k = 0; k < list.size(); ++k) {
        const Witness& w = list[k];
        out << "    {\"matrix\": [";
        for (int i = 0; i < 4; ++i) {
            out << "[";
            for (int j = 0; j < 4; ++j) {
                out << format_double(w.space.d(i, j));
                if (j < 3) out << ", ";
            }
            out << (i < 3 ? "], " : "]");
        }
        out << "],\n     \"signature\": {\"pt\": " << (w.signature.pt ? "true" : "false")
            << ", \"qi\": " << (w.signature.qi ? "true" : "false")
            << ", \"cosq\": " << (w.signature.cosq ? "true" : "false") << "},\n     \"margins\": {\"pt\": "
            << format_double(w.margin_pt) << ", \"qi\": " << format_double(w.margin_qi)
            << ", \"cosq\": " << format_double(w.margin_cosq) << "},\n     \"canonical\": [";
        for (int i = 0; i < 6; ++i) {
            out << format_double(w.canonical[static_cast<std::size_t>(i)]);
            if (i < 5) out << ", ";
        }
        out << "],\n     \"provenance\": {\"generator\": " << nlohmann::json(w.generator).dump()
            << ", \"seed\": " << w.seed << ", \"sample\": " << w.sample_index << "}}";
        out << (k + 1 < list.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

std::vector<Witness> witnesses_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::corrupt_catalog, std::string("parse failed: ") + e.what());
    }
    std::vector<Witness> out;
    try {
        if (!j.is_object() || !j.contains("witnesses")) throw error(errc::corrupt_catalog, "missing witnesses array");
        for (const auto& item : j["witnesses"]) {
            const auto rows = item.at("matrix").get<std::vector<std::vector<double>>>();
            Witness w;
            w.space = validate_metric(rows, {});
            w.signature = {item.at("signature").at("pt").get<bool>(), item.at("signature").at("qi").get<bool>(),
                           item.at("signature").at("cosq").get<bool>()};
            w.margin_pt = item.at("margins").at("pt").get<double>();
            w.margin_qi = item.at("margins").at("qi").get<double>();
            w.margin_cosq = item.at("margins").at("cosq").get<double>();
            const auto canon = item.at("canonical").get<std::vector<double>>();
            if (canon.size() != 6) throw error(errc::corrupt_catalog, "canonical vector must have 6 entries");
            std::copy(canon.begin(), canon.end(), w.canonical.begin());
            w.generator = item.at("provenance").at("generator").get<std::string>();
            w.seed = item.at("provenance").at("seed").get<std::uint64_t>();
            w.sample_index = item.at("provenance").at("sample").get<std::uint64_t>();
            out.push_back(std::move(w));
        }
    } catch (const error&) {
        throw;
    } catch (const std::exception& e) {
        throw error(errc::corrupt_catalog, e.what());
    }
    return out;
}

void save_witnesses(const std::filesystem::path& path, const std::vector<Witness>& list) {
    write_text_file(path, witnesses_to_json(list));
}

std::vector<Witness> load_witnesses(const std::filesystem::path& path) {
    return witnesses_from_json(read_text_file(path));
}

} // namespace ptolemy
