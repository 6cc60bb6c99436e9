#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ptolemy/metric_space.hpp"
#include "ptolemy/spaces.hpp"

namespace ptolemy {

// Isometry-class key of a 4-point space: the lexicographically smallest of
// the 24 relabeled distance vectors, edge order (d01,d02,d03,d12,d13,d23).
using Canonical6 = std::array<double, 6>;

Canonical6 canonicalize(const FiniteMetricSpace& space); // requires n == 4

struct ClassSignature {
    bool pt = false, qi = false, cosq = false;

    bool operator==(const ClassSignature&) const = default;
};

// Target filter; unset components are wildcards.
struct SignatureQuery {
    std::optional<bool> pt, qi, cosq;

    bool matches(const ClassSignature& s) const {
        return (!pt || *pt == s.pt) && (!qi || *qi == s.qi) && (!cosq || *cosq == s.cosq);
    }
};

// parses "pt=1,qi=0,cosq=0" with missing keys as wildcards
SignatureQuery parse_signature_query(const std::string& text);

struct Witness {
    FiniteMetricSpace space; // n = 4
    ClassSignature signature;
    double margin_pt = 0, margin_qi = 0, margin_cosq = 0;
    Canonical6 canonical{};
    std::string generator;
    std::uint64_t seed = 0;         // master hunt seed
    std::uint64_t sample_index = 0; // which draw produced it
};

Witness make_witness(const FiniteMetricSpace& space, std::string generator, std::uint64_t seed,
                     std::uint64_t sample_index, double tol = 1e-12);

struct HuntOptions {
    int threads = 0;
    double tol_class = 1e-12;
};

// Rejection sampling over the mixed random-metric generators. Deterministic
// for a fixed (budget, seed): per-sample seeds derive from the index, and the
// result list is sorted and deduplicated by canonical vector, so it does not
// depend on how samples were split across workers.
std::vector<Witness> hunt(std::uint64_t budget, std::uint64_t seed, const SignatureQuery& target,
                          const HuntOptions& opt = {});

// Dedup key: canonical vector scaled by its largest entry, compared with
// absolute tolerance 1e-9 per component.
std::vector<Witness> dedup_witnesses(std::vector<Witness> list);
std::vector<Witness> merge_witnesses(std::vector<Witness> a, const std::vector<Witness>& b);

std::string witnesses_to_json(const std::vector<Witness>& list);
std::vector<Witness> witnesses_from_json(const std::string& text); // CorruptCatalog
void save_witnesses(const std::filesystem::path& path, const std::vector<Witness>& list);
std::vector<Witness> load_witnesses(const std::filesystem::path& path);

} // namespace ptolemy
