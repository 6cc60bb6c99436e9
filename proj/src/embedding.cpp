#include "ptolemy/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ptolemy/errors.hpp"

namespace ptolemy {

EigenDecomposition symmetric_eigen(const std::vector<double>& M, int n) {
    if (n < 1 || M.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw error(errc::bad_input, "matrix size does not match dimension");
    const std::size_t un = static_cast<std::size_t>(n);
    double amax = 0.0;
    for (double v : M) amax = std::max(amax, std::abs(v));
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = i + 1; j < un; ++j)
            if (std::abs(M[i * un + j] - M[j * un + i]) > 1e-12 * std::max(1.0, amax))
                throw error(errc::not_symmetric,
                            "entries (" + std::to_string(i) + "," + std::to_string(j) + ") differ",
                            {static_cast<int>(i), static_cast<int>(j)});

    std::vector<double> A(M);
    // symmetrize exactly so rotations keep both triangles consistent
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = i + 1; j < un; ++j) {
            const double v = 0.5 * (A[i * un + j] + A[j * un + i]);
            A[i * un + j] = A[j * un + i] = v;
        }
    std::vector<double> V(un * un, 0.0);
    for (std::size_t i = 0; i < un; ++i) V[i * un + i] = 1.0;

    auto off_norm2 = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < un; ++i)
            for (std::size_t j = i + 1; j < un; ++j) s += A[i * un + j] * A[i * un + j];
        return s;
    };
    double diag2 = 0.0;
    for (std::size_t i = 0; i < un; ++i) diag2 += A[i * un + i] * A[i * un + i];
    const double stop = 1e-28 * std::max(1.0, diag2 + 2.0 * off_norm2());

    for (int sweep = 0; sweep < 100 && off_norm2() > stop; ++sweep) {
        for (std::size_t p = 0; p < un; ++p) {
            for (std::size_t q = p + 1; q < un; ++q) {
                const double apq = A[p * un + q];
                if (apq == 0.0) continue;
                const double app = A[p * un + p];
                const double aqq = A[q * un + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                A[p * un + q] = A[q * un + p] = 0.0;
                A[p * un + p] = app - t * apq;
                A[q * un + q] = aqq + t * apq;
                for (std::size_t r = 0; r < un; ++r) {
                    if (r != p && r != q) {
                        const double arp = A[r * un + p];
                        const double arq = A[r * un + q];
                        A[r * un + p] = A[p * un + r] = arp - s * (arq + tau * arp);
                        A[r * un + q] = A[q * un + r] = arq + s * (arp - tau * arq);
                    }
                    const double vrp = V[r * un + p];
                    const double vrq = V[r * un + q];
                    V[r * un + p] = vrp - s * (vrq + tau * vrp);
                    V[r * un + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    // sort eigenpairs by descending eigenvalue; ties keep original column order
    std::vector<int> order(un);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> vals(un);
    for (std::size_t i = 0; i < un; ++i) vals[i] = A[i * un + i];
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[static_cast<std::size_t>(a)] > vals[static_cast<std::size_t>(b)]; });

    EigenDecomposition out;
    out.values.resize(un);
    out.vectors.assign(un * un, 0.0);
    for (std::size_t c = 0; c < un; ++c) {
        const std::size_t src = static_cast<std::size_t>(order[c]);
        out.values[c] = vals[src];
        // sign convention: largest-magnitude component positive
        std::size_t imax = 0;
        double vmax = 0.0;
        for (std::size_t r = 0; r < un; ++r) {
            const double v = std::abs(V[r * un + src]);
            if (v > vmax) {
                vmax = v;
                imax = r;
            }
        }
        const double sgn = V[imax * un + src] < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < un; ++r) out.vectors[r * un + c] = sgn * V[r * un + src];
    }
    return out;
}

std::vector<double> gram(const FiniteMetricSpace& space, int basepoint) {
    const int n = space.n();
    if (n < 2) throw error(errc::bad_input, "gram needs at least 2 points");
    if (basepoint < 0 || basepoint >= n)
        throw error(errc::bad_basepoint, "basepoint " + std::to_string(basepoint) + " out of range", {basepoint});
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n; ++i)
        if (i != basepoint) rest.push_back(i);
    const std::size_t m = rest.size();
    std::vector<double> G(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        const double dba = space.d(basepoint, rest[a]);
        for (std::size_t b = a; b < m; ++b) {
            const double dbb = space.d(basepoint, rest[b]);
            const double dab = space.d(rest[a], rest[b]);
            const double g = 0.5 * (dba * dba + dbb * dbb - dab * dab);
            G[a * m + b] = G[b * m + a] = g;
        }
    }
    return G;
}

EmbeddingResult embed(const FiniteMetricSpace& space, int basepoint, double tol_eig_rel) {
    const int n = space.n();
    EmbeddingResult res;
    res.n = n;
    if (n == 1) {
        res.embeddable = true;
        res.dimension = 0;
        res.min_eigenvalue = 0;
        res.residual = 0;
        return res;
    }

    const std::vector<double> G = gram(space, basepoint);
    const int m = n - 1;
    const EigenDecomposition eig = symmetric_eigen(G, m);

    double trace = 0.0;
    for (int i = 0; i < m; ++i) trace += G[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(i)];
    const double eig_tol = tol_eig_rel * trace;

    res.min_eigenvalue = eig.values.back();
    res.embeddable = res.min_eigenvalue >= -eig_tol;
    int dim = 0;
    while (dim < m && eig.values[static_cast<std::size_t>(dim)] > eig_tol) ++dim;
    res.dimension = dim;

    // coordinates: basepoint at the origin, point rest[r] at
    // (sqrt(lambda_c) * v_c[r])_c over the retained spectrum
    res.coordinates.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(dim), 0.0);
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (i != basepoint) rest.push_back(i);
    for (int c = 0; c < dim; ++c) {
        const double scale = std::sqrt(std::max(0.0, eig.values[static_cast<std::size_t>(c)]));
        for (int r = 0; r < m; ++r)
            res.coordinates[static_cast<std::size_t>(rest[static_cast<std::size_t>(r)]) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c)] =
                scale * eig.vec(r, c, m);
    }

    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (int c = 0; c < dim; ++c) {
                const double diff = res.coord(i, c) - res.coord(j, c);
                s += diff * diff;
            }
            const double dij = space.d(i, j);
            worst = std::max(worst, std::abs(std::sqrt(s) - dij) / dij);
        }
    res.residual = worst;
    return res;
}

} // namespace ptolemy
