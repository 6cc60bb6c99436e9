#include "ptolemy/scan.hpp"

#include <algorithm>
#include <limits>

#include "ptolemy/errors.hpp"
#include "ptolemy/parallel.hpp"

namespace ptolemy {

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::PT: return "pt";
        case Condition::QI: return "qi";
        case Condition::COSQ: return "cosq";
    }
    return "?";
}

bool Classification::in(Condition c) const {
    switch (c) {
        case Condition::PT: return in_pt;
        case Condition::QI: return in_qi;
        case Condition::COSQ: return in_cosq;
    }
    return false;
}

std::uint64_t quadruple_count(int n) {
    if (n < 4) return 0;
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    return un * (un - 1) / 2 * (un - 2) / 3 * (un - 3) / 4;
}

std::array<int, 4> quadruple_at(std::uint64_t rank, int n) {
    // peel off the leading index by subtracting block sizes C(n-1-i, 3) etc.
    auto choose3 = [](std::uint64_t m) { return m < 3 ? 0 : m * (m - 1) / 2 * (m - 2) / 3; };
    auto choose2 = [](std::uint64_t m) { return m < 2 ? 0 : m * (m - 1) / 2; };
    int i = 0;
    while (true) {
        const std::uint64_t block = choose3(static_cast<std::uint64_t>(n - 1 - i));
        if (rank < block) break;
        rank -= block;
        ++i;
    }
    int j = i + 1;
    while (true) {
        const std::uint64_t block = choose2(static_cast<std::uint64_t>(n - 1 - j));
        if (rank < block) break;
        rank -= block;
        ++j;
    }
    int k = j + 1;
    while (true) {
        const std::uint64_t block = static_cast<std::uint64_t>(n - 1 - k);
        if (rank < block) break;
        rank -= block;
        ++k;
    }
    const int l = k + 1 + static_cast<int>(rank);
    return {i, j, k, l};
}

namespace {

struct WorstTracker {
    double margin = std::numeric_limits<double>::infinity();
    std::array<int, 4> witness{-1, -1, -1, -1};
    std::uint64_t violations = 0;

    void offer(double m, const std::array<int, 4>& q) {
        if (m < 0) ++violations;
        if (m < margin || (m == margin && q < witness)) {
            margin = m;
            witness = q;
        }
    }

    void merge(const WorstTracker& o) {
        violations += o.violations;
        if (o.margin < margin || (o.margin == margin && o.witness < witness)) {
            margin = o.margin;
            witness = o.witness;
        }
    }
};

struct ScanState {
    WorstTracker pt, qi, cosq;
};

} // namespace

std::vector<ConditionReport> scan(const FiniteMetricSpace& space, const std::vector<Condition>& conditions,
                                  const ScanOptions& opt) {
    const int n = space.n();
    if (n < 4) throw error(errc::too_few_points, "scan needs at least 4 points, got " + std::to_string(n));

    bool want_pt = false, want_qi = false, want_cosq = false;
    for (Condition c : conditions) {
        want_pt |= c == Condition::PT;
        want_qi |= c == Condition::QI;
        want_cosq |= c == Condition::COSQ;
    }
    const bool want_sq = want_qi || want_cosq;
    const std::uint64_t total = quadruple_count(n);

    ScanState result = parallel_chunked(
        total, opt.threads, ScanState{},
        [&](ScanState& st, std::uint64_t lo, std::uint64_t hi) {
            if (lo >= hi) return;
            auto [i, j, k, l] = quadruple_at(lo, n);
            const std::size_t un = static_cast<std::size_t>(n);
            const double* D = space.dist.data();
            for (std::uint64_t r = lo; r < hi; ++r) {
                const double* ri = D + static_cast<std::size_t>(i) * un;
                const double* rj = D + static_cast<std::size_t>(j) * un;
                const double* rk = D + static_cast<std::size_t>(k) * un;
                Quadruple q;
                q.idx = {i, j, k, l};
                q.d = {ri[j], ri[k], ri[l], rj[k], rj[l], rk[l]};
                if (want_pt) st.pt.offer(check_pt(q), q.idx);
                if (want_sq) {
                    double mqi, mcosq;
                    qi_cosq_margins(q, mqi, mcosq);
                    if (want_qi) st.qi.offer(mqi, q.idx);
                    if (want_cosq) st.cosq.offer(mcosq, q.idx);
                }
                // advance (i,j,k,l) lexicographically
                if (++l >= n) {
                    if (++k >= n - 1) {
                        if (++j >= n - 2) {
                            ++i;
                            j = i + 1;
                        }
                        k = j + 1;
                    }
                    l = k + 1;
                }
            }
        },
        [](ScanState& a, const ScanState& b) {
            a.pt.merge(b.pt);
            a.qi.merge(b.qi);
            a.cosq.merge(b.cosq);
        });

    std::vector<ConditionReport> out;
    for (Condition c : conditions) {
        const WorstTracker& t = c == Condition::PT ? result.pt : c == Condition::QI ? result.qi : result.cosq;
        ConditionReport rep;
        rep.condition = c;
        rep.worst_margin = t.margin;
        rep.count_checked = total;
        rep.count_violations = t.violations;
        rep.witness = make_quadruple(space, t.witness[0], t.witness[1], t.witness[2], t.witness[3]);
        out.push_back(rep);
    }
    return out;
}

Classification classify(const FiniteMetricSpace& space, double tol, const ScanOptions& opt) {
    auto reports = scan(space, {Condition::PT, Condition::QI, Condition::COSQ}, opt);
    Classification c;
    c.tol = tol;
    c.pt = reports[0];
    c.qi = reports[1];
    c.cosq = reports[2];
    c.in_pt = c.pt.worst_margin >= -tol;
    c.in_qi = c.qi.worst_margin >= -tol;
    c.in_cosq = c.cosq.worst_margin >= -tol;
    return c;
}

} // namespace ptolemy
