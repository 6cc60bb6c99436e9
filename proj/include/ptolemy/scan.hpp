#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ptolemy/quadruple.hpp"

namespace ptolemy {

enum class Condition { PT, QI, COSQ };

const char* condition_name(Condition c);

inline constexpr double kClassTol = 1e-12;

// Space-level result of checking one four-point condition over every
// quadruple. The witness is the lexicographically smallest quadruple
// attaining the worst margin, so reports are identical for any worker count.
struct ConditionReport {
    Condition condition = Condition::PT;
    double worst_margin = 0;
    Quadruple witness;
    std::uint64_t count_checked = 0;
    std::uint64_t count_violations = 0; // margin < 0
};

struct ScanOptions {
    int threads = 0; // 0 = hardware concurrency
};

std::uint64_t quadruple_count(int n);
// Inverse of the lexicographic enumeration of i<j<k<l quadruples.
std::array<int, 4> quadruple_at(std::uint64_t rank, int n);

// Exhaustively checks every C(n,4) quadruple for the requested conditions.
// Throws TooFewPoints for n < 4.
std::vector<ConditionReport> scan(const FiniteMetricSpace& space, const std::vector<Condition>& conditions,
                                  const ScanOptions& opt = {});

struct Classification {
    bool in_pt = false;
    bool in_qi = false;
    bool in_cosq = false;
    ConditionReport pt, qi, cosq;
    double tol = kClassTol;

    bool in(Condition c) const;
};

// Membership in the three condition classes: worst margin >= -tol. Witnesses
// for failed conditions live in the embedded reports.
Classification classify(const FiniteMetricSpace& space, double tol = kClassTol, const ScanOptions& opt = {});

} // namespace ptolemy
