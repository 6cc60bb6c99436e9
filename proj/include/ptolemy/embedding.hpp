#pragma once

#include <vector>

#include "ptolemy/metric_space.hpp"

namespace ptolemy {

inline constexpr double kEigTolRel = 1e-9;  // relative to trace
inline constexpr double kResidualTol = 1e-8;

struct EigenDecomposition {
    std::vector<double> values;  // sorted descending
    std::vector<double> vectors; // row-major n*n, column c = eigenvector of values[c]

    double vec(int row, int col, int n) const { return vectors[static_cast<std::size_t>(row) * static_cast<std::size_t>(n) + static_cast<std::size_t>(col)]; }
};

// Cyclic Jacobi rotations on a symmetric matrix (row-major n*n). Throws
// NotSymmetric if max |M - M^T| exceeds 1e-12 * max(1, |M|_max). Eigenvector
// signs are fixed so the entry of largest magnitude is positive.
EigenDecomposition symmetric_eigen(const std::vector<double>& M, int n);

// Basepoint Gram matrix G_ij = (d(b,i)^2 + d(b,j)^2 - d(i,j)^2) / 2 over the
// n-1 non-basepoint points, in their original index order. The space embeds
// isometrically in some Euclidean space iff G is positive semidefinite.
std::vector<double> gram(const FiniteMetricSpace& space, int basepoint = 0);

struct EmbeddingResult {
    bool embeddable = false;
    double min_eigenvalue = 0;
    int dimension = 0;
    int n = 0;
    std::vector<double> coordinates; // row-major n*dimension, basepoint row is zero
    double residual = 0;             // max relative distance error of the coordinates

    double coord(int point, int axis) const { return coordinates[static_cast<std::size_t>(point) * static_cast<std::size_t>(dimension) + static_cast<std::size_t>(axis)]; }
};

// Classical multidimensional scaling from the basepoint Gram spectrum.
// Non-embeddable spaces get best-effort coordinates from the PSD part of the
// spectrum and embeddable=false.
EmbeddingResult embed(const FiniteMetricSpace& space, int basepoint = 0, double tol_eig_rel = kEigTolRel);

} // namespace ptolemy
