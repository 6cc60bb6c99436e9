#include "ptolemy/metric_space.hpp"

#include <algorithm>
#include <cmath>

#include "ptolemy/errors.hpp"

namespace ptolemy {

const char* errc_name(errc c) {
    switch (c) {
        case errc::asymmetric_matrix: return "AsymmetricMatrix";
        case errc::negative_distance: return "NegativeDistance";
        case errc::nonzero_diagonal: return "NonzeroDiagonal";
        case errc::zero_off_diagonal: return "ZeroOffDiagonal";
        case errc::triangle_violation: return "TriangleViolation";
        case errc::too_few_points: return "TooFewPoints";
        case errc::bad_basepoint: return "BadBasepoint";
        case errc::not_symmetric: return "NotSymmetric";
        case errc::bad_spec: return "BadSpec";
        case errc::disconnected: return "Disconnected";
        case errc::not_a_geodesic: return "NotAGeodesic";
        case errc::line_not_sampled: return "LineNotSampled";
        case errc::boundary_basepoint: return "BoundaryBasepoint";
        case errc::window_out_of_range: return "WindowOutOfRange";
        case errc::ray_exits_strip: return "RayExitsStrip";
        case errc::corrupt_catalog: return "CorruptCatalog";
        case errc::bad_input: return "BadInput";
    }
    return "UnknownError";
}

double FiniteMetricSpace::max_distance() const {
    double m = 0.0;
    for (double v : dist) m = std::max(m, v);
    return m;
}

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
    return out;
}

FiniteMetricSpace validate_metric(std::vector<double> matrix, std::vector<std::string> labels,
                                  double tol_tri_rel) {
    const std::size_t n = labels.size();
    if (n < 1) throw error(errc::bad_input, "need at least one point");
    if (matrix.size() != n * n)
        throw error(errc::bad_input, "matrix size " + std::to_string(matrix.size()) +
                                         " does not match " + std::to_string(n) + " labels");
    auto at = [&](std::size_t i, std::size_t j) -> double { return matrix[i * n + j]; };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(at(i, j)))
                throw error(errc::bad_input, "non-finite entry at (" + std::to_string(i) + "," + std::to_string(j) + ")",
                            {static_cast<int>(i), static_cast<int>(j)});

    for (std::size_t i = 0; i < n; ++i)
        if (at(i, i) != 0.0)
            throw error(errc::nonzero_diagonal, "entry (" + std::to_string(i) + "," + std::to_string(i) + ") is " +
                                                    std::to_string(at(i, i)),
                        {static_cast<int>(i)});

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (at(i, j) != at(j, i))
                throw error(errc::asymmetric_matrix, "entries (" + std::to_string(i) + "," + std::to_string(j) +
                                                         ") and (" + std::to_string(j) + "," + std::to_string(i) +
                                                         ") differ",
                            {static_cast<int>(i), static_cast<int>(j)});

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (at(i, j) < 0.0)
                throw error(errc::negative_distance, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")",
                            {static_cast<int>(i), static_cast<int>(j)});
            if (at(i, j) == 0.0)
                throw error(errc::zero_off_diagonal, "points " + std::to_string(i) + " and " + std::to_string(j) +
                                                         " coincide",
                            {static_cast<int>(i), static_cast<int>(j)});
        }

    double dmax = 0.0;
    for (double v : matrix) dmax = std::max(dmax, v);
    const double tol = tol_tri_rel * dmax;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            const double dij = at(i, j);
            for (std::size_t k = i + 1; k < n; ++k) {
                if (k == j) continue;
                if (at(i, k) > dij + at(j, k) + tol)
                    throw error(errc::triangle_violation,
                                "d(" + std::to_string(i) + "," + std::to_string(k) + ") > d(" + std::to_string(i) +
                                    "," + std::to_string(j) + ") + d(" + std::to_string(j) + "," + std::to_string(k) +
                                    ")",
                                {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)});
            }
        }

    FiniteMetricSpace s;
    s.labels = std::move(labels);
    s.dist = std::move(matrix);
    return s;
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& rows,
                                  std::vector<std::string> labels, double tol_tri_rel) {
    const std::size_t n = rows.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw error(errc::bad_input, "matrix is not square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    if (labels.empty()) labels = default_labels(static_cast<int>(n));
    return validate_metric(std::move(flat), std::move(labels), tol_tri_rel);
}

} // namespace ptolemy
