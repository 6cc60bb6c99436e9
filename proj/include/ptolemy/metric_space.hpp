#pragma once

#include <string>
#include <vector>

namespace ptolemy {

// A validated finite metric space: point labels plus a symmetric matrix of
// pairwise distances. Instances are immutable after validation and safe to
// share read-only across threads.
struct FiniteMetricSpace {
    std::vector<std::string> labels;
    std::vector<double> dist; // row-major n*n

    int n() const { return static_cast<int>(labels.size()); }
    double d(int i, int j) const { return dist[static_cast<std::size_t>(i) * labels.size() + static_cast<std::size_t>(j)]; }
    double max_distance() const;
};

inline constexpr double kTriangleTolRel = 1e-9;

// Checks all metric axioms and the triangle inequality (tolerance relative to
// the largest entry) and returns the validated space. Throws ptolemy::error
// with the offending indices on the first violation found.
FiniteMetricSpace validate_metric(std::vector<double> matrix, std::vector<std::string> labels,
                                  double tol_tri_rel = kTriangleTolRel);

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& rows,
                                  std::vector<std::string> labels,
                                  double tol_tri_rel = kTriangleTolRel);

std::vector<std::string> default_labels(int n);

} // namespace ptolemy
