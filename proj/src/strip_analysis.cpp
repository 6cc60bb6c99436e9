#include "ptolemy/strip_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ptolemy/errors.hpp"
#include "ptolemy/geodesic_graph.hpp"
#include "ptolemy/scan.hpp"

namespace ptolemy {

int find_point(const StripChart& chart, double t, double s, double tol) {
    for (std::size_t i = 0; i < chart.points.size(); ++i)
        if (std::abs(chart.points[i].t - t) <= tol && std::abs(chart.points[i].s - s) <= tol)
            return static_cast<int>(i);
    return -1;
}

namespace {

int snap_t_index(const StripChart& chart, double t) {
    const StripSpec& sp = chart.spec;
    int it = static_cast<int>(std::lround((t + sp.T) / sp.dt()));
    return std::clamp(it, 0, sp.nt - 1);
}

void check_line_index(const StripChart& chart, int line_is) {
    if (line_is < 0 || line_is >= chart.spec.ns)
        throw error(errc::line_not_sampled, "no sampled line with s-index " + std::to_string(line_is),
                    {line_is});
}

std::vector<double> busemann_values(const StripChart& chart, int line_is, int direction, double T_target,
                                    double& T_used) {
    const int it_end = snap_t_index(chart, direction > 0 ? T_target : -T_target);
    const int endpoint = chart.index(it_end, line_is);
    T_used = std::abs(chart.points[static_cast<std::size_t>(endpoint)].t);
    std::vector<double> vals(chart.points.size());
    for (std::size_t i = 0; i < chart.points.size(); ++i)
        vals[i] = chart.space.d(static_cast<int>(i), endpoint) - T_used;
    return vals;
}

} // namespace

BusemannField busemann(const StripChart& chart, int line_is, int direction, double T) {
    check_line_index(chart, line_is);
    if (direction != 1 && direction != -1) throw error(errc::bad_input, "direction must be +1 or -1");
    if (!(T > 0) || T > chart.spec.T + 1e-9)
        throw error(errc::bad_input, "truncation T must lie within the sampled range");
    BusemannField f;
    f.line_is = line_is;
    f.direction = direction;
    f.values = busemann_values(chart, line_is, direction, T, f.T);
    f.values_half = busemann_values(chart, line_is, direction, 0.5 * T, f.T_half);
    double err = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        err = std::max(err, std::abs(f.values[i] - f.values_half[i]));
    f.truncation_error = err;
    return f;
}

ConstancyReport busemann_difference(const StripChart& chart, int line1_is, int line2_is, int direction,
                                    double T, double window) {
    const BusemannField b1 = busemann(chart, line1_is, direction, T);
    const BusemannField b2 = busemann(chart, line2_is, direction, T);
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < chart.points.size(); ++i)
        if (std::abs(chart.points[i].t) <= window + 1e-12) sel.push_back(i);
    if (sel.empty()) throw error(errc::window_out_of_range, "no sampled points inside the window");

    ConstancyReport r;
    double sum = 0;
    for (std::size_t i : sel) sum += b1.values[i] - b2.values[i];
    r.mean = sum / static_cast<double>(sel.size());
    for (std::size_t i : sel) {
        const double f = b1.values[i] - b2.values[i];
        const double f_half = b1.values_half[i] - b2.values_half[i];
        r.deviation = std::max(r.deviation, std::abs(f - r.mean));
        r.truncation_bar = std::max(r.truncation_bar, std::abs(f - f_half));
    }
    return r;
}

double affinity_defect(std::span<const double> values, double step) {
    if (values.size() < 3 || !(step > 0)) throw error(errc::bad_input, "need >= 3 equally spaced samples");
    double worst = 0;
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        worst = std::max(worst, std::abs(values[i + 1] - 2.0 * values[i] + values[i - 1]));
    return worst / (step * step);
}

FibreCoords fibre_map(const StripChart& chart, int base_index) {
    if (base_index < 0 || base_index >= static_cast<int>(chart.points.size()))
        throw error(errc::bad_input, "base index out of range");
    const GridPoint& x0 = chart.points[static_cast<std::size_t>(base_index)];
    if (x0.is == 0 || x0.is == chart.spec.ns - 1)
        throw error(errc::boundary_basepoint, "base point must be interior, s-index " + std::to_string(x0.is),
                    {x0.is});
    FibreCoords fc;
    fc.base_index = base_index;
    fc.B.resize(chart.points.size());
    fc.A.resize(chart.points.size());
    for (std::size_t i = 0; i < chart.points.size(); ++i) {
        const GridPoint& x = chart.points[i];
        fc.B[i] = x.t - x0.t;
        const int fibre_pt = chart.index(x.it, x0.is);
        const double dist = chart.space.d(static_cast<int>(i), fibre_pt);
        fc.A[i] = x.is >= x0.is ? dist : -dist;
    }
    return fc;
}

PairwiseRatioReport fibre_bilipschitz(const StripChart& chart, const FibreCoords& fc) {
    PairwiseRatioReport r;
    r.min_ratio = std::numeric_limits<double>::infinity();
    r.max_ratio = 0;
    const int n = static_cast<int>(chart.points.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = chart.space.d(i, j);
            const double f = std::hypot(fc.B[static_cast<std::size_t>(i)] - fc.B[static_cast<std::size_t>(j)],
                                        fc.A[static_cast<std::size_t>(i)] - fc.A[static_cast<std::size_t>(j)]);
            r.min_ratio = std::min(r.min_ratio, f / d);
            r.max_ratio = std::max(r.max_ratio, f / d);
            r.max_abs_dev = std::max(r.max_abs_dev, std::abs(f - d));
        }
    return r;
}

LipschitzReport fibre_lipschitz(const StripChart& chart, const FibreCoords& fc) {
    LipschitzReport r;
    const int n = static_cast<int>(chart.points.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = chart.space.d(i, j);
            r.worst_B = std::max(r.worst_B, std::abs(fc.B[static_cast<std::size_t>(i)] - fc.B[static_cast<std::size_t>(j)]) / d);
            r.worst_A = std::max(r.worst_A, std::abs(fc.A[static_cast<std::size_t>(i)] - fc.A[static_cast<std::size_t>(j)]) / d);
        }
    return r;
}

double property_a_defect(const StripChart& chart) {
    const StripSpec& sp = chart.spec;
    double worst = 0;
    for (int i = 0; i < static_cast<int>(chart.points.size()); ++i) {
        const GridPoint& x = chart.points[static_cast<std::size_t>(i)];
        for (int it = 0; it < sp.nt; ++it) {
            const double want = std::abs(x.t - sp.t_of(it));
            double best = std::numeric_limits<double>::infinity();
            for (int is = 0; is < sp.ns; ++is)
                best = std::min(best, std::abs(chart.space.d(i, chart.index(it, is)) - want));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

RescaleReport rescale(const StripChart& chart, int base_index, double lambda, double radius) {
    if (!(lambda > 0)) throw error(errc::bad_input, "lambda must be positive");
    const FibreCoords fc = fibre_map(chart, base_index);
    double bmin = 0, bmax = 0, amin = 0, amax = 0;
    for (std::size_t i = 0; i < fc.B.size(); ++i) {
        bmin = std::min(bmin, fc.B[i]);
        bmax = std::max(bmax, fc.B[i]);
        amin = std::min(amin, fc.A[i]);
        amax = std::max(amax, fc.A[i]);
    }
    const double cover = lambda * std::min(std::min(-bmin, bmax), std::min(-amin, amax));
    if (radius > cover + 1e-12)
        throw error(errc::window_out_of_range,
                    "window radius " + std::to_string(radius) + " exceeds covered radius " + std::to_string(cover));

    std::vector<int> win;
    for (std::size_t i = 0; i < fc.B.size(); ++i)
        if (std::hypot(lambda * fc.B[i], lambda * fc.A[i]) <= radius + 1e-12) win.push_back(static_cast<int>(i));

    RescaleReport r;
    r.lambda = lambda;
    r.window_points = static_cast<int>(win.size());
    r.min_ratio = std::numeric_limits<double>::infinity();
    r.max_ratio = 0;
    for (std::size_t a = 0; a < win.size(); ++a)
        for (std::size_t b = a + 1; b < win.size(); ++b) {
            const int i = win[a], j = win[b];
            const double d_scaled = lambda * chart.space.d(i, j);
            const double d_eu = lambda * std::hypot(fc.B[static_cast<std::size_t>(i)] - fc.B[static_cast<std::size_t>(j)],
                                                    fc.A[static_cast<std::size_t>(i)] - fc.A[static_cast<std::size_t>(j)]);
            r.sup_dev = std::max(r.sup_dev, std::abs(d_scaled - d_eu));
            if (d_eu > 0) {
                r.min_ratio = std::min(r.min_ratio, d_scaled / d_eu);
                r.max_ratio = std::max(r.max_ratio, d_scaled / d_eu);
            }
        }
    if (win.size() < 2) {
        r.min_ratio = 1;
        r.max_ratio = 1;
    }
    return r;
}

PythProbe pyth_probe(const StripChart& chart, int base_index, double theta, std::span<const double> radii) {
    const StripSpec& sp = chart.spec;
    const GridPoint& x0 = chart.points[static_cast<std::size_t>(base_index)];
    if (x0.is == 0 || x0.is == sp.ns - 1)
        throw error(errc::boundary_basepoint, "base point must be interior");
    PythProbe probe;
    probe.theta = theta;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    probe.alpha = ct;
    for (double r : radii) {
        if (!(r > 0)) throw error(errc::bad_input, "radii must be positive");
        const double t = x0.t + r * ct;
        const double s = x0.s + r * st;
        if (s < -1e-12 || s > sp.a + 1e-12 || std::abs(t) > sp.T + 1e-12)
            throw error(errc::ray_exits_strip,
                        "radius " + std::to_string(r) + " leaves the strip at (" + std::to_string(t) + "," +
                            std::to_string(s) + ")");
        double A;
        if (has_closed_form(sp.family)) {
            const double fibre = family_distance(sp, 0.0, s - x0.s);
            A = s >= x0.s ? fibre : -fibre;
        } else {
            // nearest sampled points stand in for the exact ray
            const int xi = snap_t_index(chart, t);
            const int si = std::clamp(static_cast<int>(std::lround(s / sp.ds())), 0, sp.ns - 1);
            const int pt = chart.index(xi, si);
            const int fibre_pt = chart.index(xi, x0.is);
            const double fibre = chart.space.d(pt, fibre_pt);
            A = s >= x0.s ? fibre : -fibre;
        }
        probe.ratios.push_back((A * A) / (r * r));
    }
    return probe;
}

EquidistanceReport equidistance_trace(const StripChart& chart, int s1_is, int s2_is) {
    check_line_index(chart, s1_is);
    check_line_index(chart, s2_is);
    const StripSpec& sp = chart.spec;
    EquidistanceReport rep;
    rep.mu.resize(static_cast<std::size_t>(sp.nt));
    double mu_min = std::numeric_limits<double>::infinity();
    for (int it = 0; it < sp.nt; ++it) {
        rep.mu[static_cast<std::size_t>(it)] = chart.space.d(chart.index(it, s1_is), chart.index(it, s2_is));
        mu_min = std::min(mu_min, rep.mu[static_cast<std::size_t>(it)]);
    }
    const double m = 1.0 / mu_min;
    for (int i = 0; i < sp.nt; ++i)
        for (int j = i + 1; j < sp.nt; ++j) {
            const double mu_i = rep.mu[static_cast<std::size_t>(i)];
            const double mu_j = rep.mu[static_cast<std::size_t>(j)];
            const double hi = std::max(mu_i, mu_j);
            const double gap2 = (sp.t_of(i) - sp.t_of(j)) * (sp.t_of(i) - sp.t_of(j));
            rep.worst_pt_bound_defect = std::max(rep.worst_pt_bound_defect, hi * hi - (mu_i * mu_j + gap2));
            rep.worst_quadratic_defect = std::max(rep.worst_quadratic_defect, std::abs(mu_i - mu_j) - m * gap2);
        }
    rep.worst_pt_bound_defect = std::max(rep.worst_pt_bound_defect, 0.0);
    rep.worst_quadratic_defect = std::max(rep.worst_quadratic_defect, 0.0);
    return rep;
}

FlatConclusionReport flat_conclusion(const StripChart& chart) {
    FlatConclusionReport rep;
    const int n = static_cast<int>(chart.points.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double defect = flat_defect_at(chart, i, j);
            if (defect > rep.worst_defect) {
                rep.worst_defect = defect;
                rep.i = i;
                rep.j = j;
            }
        }
    return rep;
}

double flat_defect_at(const StripChart& chart, int i, int j) {
    const GridPoint& a = chart.points[static_cast<std::size_t>(i)];
    const GridPoint& b = chart.points[static_cast<std::size_t>(j)];
    const double d = chart.space.d(i, j);
    if (d < 1e-9) return 0.0;
    const double dt = a.t - b.t;
    const double ds = a.s - b.s;
    return std::abs(d * d - (dt * dt + ds * ds)) / (d * d);
}

// ---- battery --------------------------------------------------------------

const CheckResult* BatteryReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

// Families whose sampled lines are unit-speed geodesics of the family metric.
// The snowflake with eps < 1 is not: its line parameter measures |dt|^eps.
bool arclength_lines(const StripSpec& sp) {
    switch (sp.family) {
        case StripFamily::euclidean: return true;
        case StripFamily::lp: return true;
        case StripFamily::snowflake: return sp.eps == 1.0;
        case StripFamily::conformal: return false; // unit lower bound only
    }
    return false;
}

bool euclidean_like(const StripSpec& sp) {
    return sp.family == StripFamily::euclidean || (sp.family == StripFamily::lp && sp.p == 2.0) ||
           (sp.family == StripFamily::snowflake && sp.eps == 1.0);
}

} // namespace

BatteryReport run_battery(const StripSpec& spec, int threads) {
    validate_spec(spec);
    BatteryReport rep;
    rep.spec = spec;
    const StripChart chart = strip_sample(spec);
    const StripSpec& sp = chart.spec;
    const bool euclid = euclidean_like(sp);
    const bool formula = has_closed_form(sp.family);
    const bool arclength = arclength_lines(sp);
    const bool snow = sp.family == StripFamily::snowflake && sp.eps < 1.0;
    const bool conformal = sp.family == StripFamily::conformal;

    auto add = [&](std::string name, bool asserted, bool pass, double value, std::string detail = "") {
        rep.checks.push_back({std::move(name), asserted, pass, value, std::move(detail)});
        if (asserted && !pass) rep.all_pass = false;
    };

    // condition scans
    {
        ScanOptions opt;
        opt.threads = threads;
        const auto reports = scan(chart.space, {Condition::PT, Condition::QI, Condition::COSQ}, opt);
        const double wpt = reports[0].worst_margin;
        const double wqi = reports[1].worst_margin;
        const double wcq = reports[2].worst_margin;
        if (euclid || snow) {
            // snowflakes of the flat strip still embed in Hilbert space, so
            // all three conditions must hold
            add("scan-pt", true, wpt >= -1e-12, wpt);
            add("scan-qi", true, wqi >= -1e-12, wqi);
            add("scan-cosq", true, wcq >= -1e-12, wcq);
        } else if (sp.family == StripFamily::lp) {
            add("scan-pt", true, wpt < -kClassTol, wpt, "expected a violation for p != 2");
            add("scan-qi", false, true, wqi);
            add("scan-cosq", false, true, wcq);
        } else {
            add("scan-pt", false, true, wpt);
            add("scan-qi", false, true, wqi);
            add("scan-cosq", false, true, wcq);
        }
    }

    // flat conclusion
    {
        const auto fc = flat_conclusion(chart);
        if (euclid)
            add("flat-conclusion", true, fc.worst_defect <= 1e-12, fc.worst_defect);
        else if (sp.family == StripFamily::lp)
            add("flat-conclusion", true, fc.worst_defect >= 0.1, fc.worst_defect, "expected non-flat");
        else if (snow)
            add("flat-conclusion", true, fc.worst_defect >= 1e-3, fc.worst_defect, "expected non-flat");
        else
            add("flat-conclusion", true, fc.worst_defect >= 1e-6, fc.worst_defect, "expected non-flat");
    }

    // Busemann battery on the lower boundary line
    {
        const double T = sp.T;
        const BusemannField bp = busemann(chart, 0, +1, T);
        const BusemannField bm = busemann(chart, 0, -1, T);

        double lip = 0;
        const int n = static_cast<int>(chart.points.size());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                lip = std::max(lip, std::abs(bp.values[static_cast<std::size_t>(i)] - bp.values[static_cast<std::size_t>(j)]) -
                                        chart.space.d(i, j));
        add("busemann-lipschitz", true, lip <= 1e-12, lip);

        double sum_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < bp.values.size(); ++i)
            sum_min = std::min(sum_min, bp.values[i] + bm.values[i]);
        add("busemann-pos-min", arclength || conformal, sum_min >= -1e-12, sum_min);

        double on_line = 0;
        for (int it = 0; it < sp.nt; ++it) {
            const std::size_t i = static_cast<std::size_t>(chart.index(it, 0));
            on_line = std::max(on_line, std::abs(bp.values[i] + bm.values[i]));
        }
        add("busemann-pos-on-line", arclength, on_line <= 1e-12, on_line);

        const double window = std::min(1.0, sp.T / 5.0);
        const ConstancyReport cr = busemann_difference(chart, 0, sp.ns - 1, +1, T, window);
        add("busemann-constancy", arclength && formula, cr.deviation <= 2.0 * cr.truncation_bar + 1e-12, cr.deviation,
            "bar " + std::to_string(cr.truncation_bar));

        // sum identity between the two boundary lines
        const BusemannField b2p = busemann(chart, sp.ns - 1, +1, T);
        const BusemannField b2m = busemann(chart, sp.ns - 1, -1, T);
        double ident = 0, ident_bar = 0;
        for (std::size_t i = 0; i < bp.values.size(); ++i) {
            if (std::abs(chart.points[i].t) > window + 1e-12) continue;
            const double gap = (bp.values[i] + bm.values[i]) - (b2p.values[i] + b2m.values[i]);
            const double gap_half = (bp.values_half[i] + bm.values_half[i]) - (b2p.values_half[i] + b2m.values_half[i]);
            ident = std::max(ident, std::abs(gap));
            ident_bar = std::max(ident_bar, std::abs(gap - gap_half));
        }
        add("busemann-sum-identity", arclength && formula, ident <= 2.0 * ident_bar + 1e-12, ident,
            "bar " + std::to_string(ident_bar));

        // affinity of b+ along the central vertical segment, against the
        // same defect at half truncation
        const int it_mid = snap_t_index(chart, 0.0);
        std::vector<double> seg(static_cast<std::size_t>(sp.ns)), seg_half(static_cast<std::size_t>(sp.ns));
        for (int is = 0; is < sp.ns; ++is) {
            seg[static_cast<std::size_t>(is)] = bp.values[static_cast<std::size_t>(chart.index(it_mid, is))];
            seg_half[static_cast<std::size_t>(is)] = bp.values_half[static_cast<std::size_t>(chart.index(it_mid, is))];
        }
        const double aff = affinity_defect(seg, sp.ds());
        const double aff_half = affinity_defect(seg_half, sp.ds());
        add("busemann-affinity", arclength && formula, aff <= aff_half + 1e-12, aff,
            "half-T defect " + std::to_string(aff_half));
    }

    // fibre chart relative to an interior base point near the centre
    {
        const int base = chart.index(snap_t_index(chart, 0.0), sp.ns / 2);
        const FibreCoords fc = fibre_map(chart, base);

        const LipschitzReport lr = fibre_lipschitz(chart, fc);
        add("fibre-B-lipschitz", arclength || conformal, lr.worst_B <= 1.0 + 1e-12, lr.worst_B);
        add("fibre-A-lipschitz", arclength || snow, lr.worst_A <= 2.0 + 1e-12, lr.worst_A);

        const PairwiseRatioReport br = fibre_bilipschitz(chart, fc);
        add("fibre-bilipschitz", arclength && formula,
            br.min_ratio >= 0.25 - 1e-12 && br.max_ratio <= 2.0 + 1e-12, br.min_ratio,
            "max ratio " + std::to_string(br.max_ratio));
        if (euclid) add("fibre-isometry", true, br.max_abs_dev <= 1e-12, br.max_abs_dev);

        const double pa = property_a_defect(chart);
        add("property-A", arclength && formula, pa <= 1e-12, pa);

        // fibre coordinates along straight sampled segments stay affine
        std::vector<double> bseg(static_cast<std::size_t>(sp.ns)), aseg(static_cast<std::size_t>(sp.ns));
        for (int is = 0; is < sp.ns; ++is) {
            bseg[static_cast<std::size_t>(is)] = fc.B[static_cast<std::size_t>(chart.index(snap_t_index(chart, 0.0), is))];
            aseg[static_cast<std::size_t>(is)] = fc.A[static_cast<std::size_t>(chart.index(snap_t_index(chart, 0.0), is))];
        }
        std::vector<double> bline(static_cast<std::size_t>(sp.nt)), aline(static_cast<std::size_t>(sp.nt));
        for (int it = 0; it < sp.nt; ++it) {
            bline[static_cast<std::size_t>(it)] = fc.B[static_cast<std::size_t>(chart.index(it, sp.ns / 2))];
            aline[static_cast<std::size_t>(it)] = fc.A[static_cast<std::size_t>(chart.index(it, sp.ns / 2))];
        }
        const double baff = std::max(affinity_defect(bseg, sp.ds()), affinity_defect(bline, sp.dt()));
        const double aaff = std::max(affinity_defect(aseg, sp.ds()), affinity_defect(aline, sp.dt()));
        add("fibre-B-affinity", arclength && formula, baff <= 1e-12, baff);
        add("fibre-A-affinity", arclength && formula, aaff <= 1e-12, aaff);

        // rescaling at dyadic factors
        const double radius = 0.95 * std::min(std::min(std::abs(-sp.T - chart.points[static_cast<std::size_t>(base)].t),
                                                       sp.T - chart.points[static_cast<std::size_t>(base)].t),
                                              std::min(chart.points[static_cast<std::size_t>(base)].s,
                                                       sp.a - chart.points[static_cast<std::size_t>(base)].s));
        double worst_sup = 0, worst_lo = std::numeric_limits<double>::infinity(), worst_hi = 0;
        for (double lambda : {1.0, 2.0, 4.0, 8.0}) {
            const RescaleReport rr = rescale(chart, base, lambda, radius);
            worst_sup = std::max(worst_sup, rr.sup_dev);
            worst_lo = std::min(worst_lo, rr.min_ratio);
            worst_hi = std::max(worst_hi, rr.max_ratio);
        }
        add("rescale-bounds", arclength && formula, worst_lo >= 0.5 - 1e-9 && worst_hi <= 4.0 + 1e-9, worst_lo,
            "max ratio " + std::to_string(worst_hi));
        if (euclid) add("rescale-isometry", true, worst_sup <= 1e-12, worst_sup);

        // Pythagorean probe at three angles
        const double pi = std::numbers::pi;
        const std::array<double, 3> thetas = {0.0, pi / 3.0, pi / 2.0};
        const std::array<double, 3> expected = {0.0, 0.75, 1.0};
        const std::array<double, 4> radii = {0.05, 0.1, 0.2, 0.4};
        std::vector<double> usable;
        for (double r : radii)
            if (r < radius) usable.push_back(r);
        double pyth_worst = 0;
        for (std::size_t k = 0; k < thetas.size(); ++k) {
            const PythProbe pr = pyth_probe(chart, base, thetas[k], usable);
            for (double ratio : pr.ratios) pyth_worst = std::max(pyth_worst, std::abs(ratio - expected[k]));
        }
        add("pyth", arclength && formula, pyth_worst <= 1e-9, pyth_worst);
    }

    // equidistance of two parallel sampled lines
    {
        const int s1 = sp.ns >= 4 ? 1 : 0;
        const int s2 = sp.ns >= 4 ? sp.ns - 2 : sp.ns - 1;
        const EquidistanceReport er = equidistance_trace(chart, s1, s2);
        const double worst = std::max(er.worst_pt_bound_defect, er.worst_quadratic_defect);
        add("equidistance", (arclength && formula) || snow, worst <= 1e-12, worst);
    }

    // geodesicity probe: approximate midpoints must exist on fine grids
    {
        const auto defect_for = [&](int i, int j) {
            const double dij = chart.space.d(i, j);
            double best = std::numeric_limits<double>::infinity();
            for (int z = 0; z < static_cast<int>(chart.points.size()); ++z)
                best = std::min(best, std::max(std::abs(chart.space.d(i, z) - 0.5 * dij),
                                               std::abs(chart.space.d(z, j) - 0.5 * dij)));
            return best;
        };
        double worst = 0;
        worst = std::max(worst, defect_for(chart.index(0, 0), chart.index(sp.nt - 1, sp.ns - 1)));
        worst = std::max(worst, defect_for(chart.index(0, sp.ns / 2), chart.index(sp.nt - 1, sp.ns / 2)));
        worst = std::max(worst, defect_for(chart.index(0, 0), chart.index(sp.nt - 1, 0)));
        const double pitch = std::hypot(sp.dt(), sp.ds());
        add("geodesicity", (arclength && formula), worst <= 0.75 * pitch, worst,
            "pitch " + std::to_string(pitch));
    }

    // projection onto a boundary line stays in the fibre (graph families)
    if (sp.family == StripFamily::euclidean || conformal) {
        GraphSpace g = grid_strip_graph(sp, sp.kring);
        std::vector<int> line;
        for (int it = 0; it < sp.nt; ++it) line.push_back(chart.index(it, 0));
        double worst = 0;
        for (int is = 1; is < sp.ns; ++is)
            for (int it = 0; it < sp.nt; ++it) {
                const int x = chart.index(it, is);
                const Projection pr = project(g, line, x);
                const GridPoint& px = chart.points[static_cast<std::size_t>(pr.vertex)];
                worst = std::max(worst, std::abs(px.t - chart.points[static_cast<std::size_t>(x)].t));
            }
        add("projection-in-fibre", sp.family == StripFamily::euclidean, worst <= sp.dt() + 1e-12, worst);
    }

    return rep;
}

} // namespace ptolemy
