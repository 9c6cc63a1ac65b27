#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace lh::quad {

namespace {

// 15-point Gauss-Kronrod rule on [-1, 1] (7-point Gauss embedded).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
    cplx value{0.0, 0.0};
    double err = 0.0;
    double resabs = 0.0;
};

PanelResult gk15(const std::function<cplx(double)>& f, double a, double b) {
    const double hlgth = 0.5 * (b - a);
    const double centr = 0.5 * (a + b);

    cplx fv1[7], fv2[7];
    const cplx fc = f(centr);

    cplx resg = kWg[3] * fc;
    cplx resk = kWgk[7] * fc;
    double resabs = kWgk[7] * std::abs(fc);

    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        fv1[j] = f(centr - absc);
        fv2[j] = f(centr + absc);
        const cplx fsum = fv1[j] + fv2[j];
        if (j % 2 == 1)
            resg += kWg[j / 2] * fsum;
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }

    const cplx reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    PanelResult out;
    out.value = resk * hlgth;
    resabs *= std::abs(hlgth);
    resasc *= std::abs(hlgth);
    out.resabs = resabs;

    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    out.err = err;
    return out;
}

struct Segment {
    double a, b;
    cplx value;
    double err;
    bool splittable = true;
};

QuadResult adaptive(const std::function<cplx(double)>& f, double a, double b,
                    double rel_tol, double abs_tol, int max_subdivisions,
                    long evals_per_point, const std::vector<double>& breaks = {}) {
    std::vector<Segment> segs;
    segs.reserve(256);
    // max-heap of (error, segment index) with lazy invalidation
    std::priority_queue<std::pair<double, int>> heap;

    QuadResult res;
    cplx value{0.0, 0.0};
    double errsum = 0.0;
    {
        std::vector<double> bounds;
        bounds.push_back(a);
        for (double x : breaks)
            if (x > a && x < b)
                bounds.push_back(x);
        bounds.push_back(b);
        std::sort(bounds.begin(), bounds.end());
        bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
        for (size_t i = 0; i + 1 < bounds.size(); ++i) {
            PanelResult p = gk15(f, bounds[i], bounds[i + 1]);
            segs.push_back({bounds[i], bounds[i + 1], p.value, p.err});
            heap.emplace(p.err, static_cast<int>(segs.size()) - 1);
            res.evaluations += 15 * evals_per_point;
            value += p.value;
            errsum += p.err;
        }
    }

    const double min_width = 128.0 * std::numeric_limits<double>::epsilon() *
                             (std::abs(a) + std::abs(b) + 1.0);

    while (errsum > std::max(abs_tol, rel_tol * std::abs(value))) {
        int worst = -1;
        while (!heap.empty()) {
            auto [err, idx] = heap.top();
            if (err == segs[idx].err && segs[idx].splittable) {
                worst = idx;
                break;
            }
            heap.pop();
        }
        if (worst < 0 || static_cast<int>(segs.size()) >= max_subdivisions) {
            const double tol = std::max(abs_tol, rel_tol * std::abs(value));
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "adaptive quadrature: subdivision budget exhausted "
                          "(error estimate %.3e, tolerance %.3e, %zu segments)",
                          errsum, tol, segs.size());
            fail(ErrorCode::NonConvergence, msg);
        }
        heap.pop();

        const Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        PanelResult pl = gk15(f, s.a, mid);
        PanelResult pr = gk15(f, mid, s.b);
        res.evaluations += 30 * evals_per_point;
        const bool small = (s.b - s.a) < min_width;
        segs[worst] = {s.a, mid, pl.value, pl.err, !small};
        segs.push_back({mid, s.b, pr.value, pr.err, !small});
        heap.emplace(pl.err, worst);
        heap.emplace(pr.err, static_cast<int>(segs.size()) - 1);
        value += pl.value + pr.value - s.value;
        errsum += pl.err + pr.err - s.err;
        // refresh the running error total now and then; it only accumulates
        // positive terms so drift stays small, the value drift matters more
        if (segs.size() % 4096 == 0) {
            value = cplx(0.0, 0.0);
            errsum = 0.0;
            for (const auto& sg : segs) {
                value += sg.value;
                errsum += sg.err;
            }
        }
    }

    // deterministic compensated summation in position order
    std::sort(segs.begin(), segs.end(),
              [](const Segment& l, const Segment& r) { return l.a < r.a; });
    cplx sum{0.0, 0.0}, comp{0.0, 0.0};
    double final_err = 0.0;
    for (const auto& s : segs) {
        const cplx y = s.value - comp;
        const cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        final_err += s.err;
    }
    res.value = sum;
    res.error_estimate = final_err;
    return res;
}

} // namespace

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_subdivisions < 1 ||
        !(inner_rel_tol > 0.0) || inner_rel_tol > rel_tol)
        fail(ErrorCode::InvalidConfig, "quadrature config: require rel_tol > 0, abs_tol >= 0, "
                                       "max_subdivisions >= 1, 0 < inner_rel_tol <= rel_tol");
}

QuadResult integrate_finite(const std::function<cplx(double)>& f, double a, double b,
                            double rel_tol, double abs_tol, int max_subdivisions) {
    return adaptive(f, a, b, rel_tol, abs_tol, max_subdivisions, 1);
}

QuadResult integrate_line(const LineIntegrand& f, const QuadConfig& cfg,
                          const std::vector<double>& split_hints) {
    cfg.validate();
    auto transformed = [&f](double t) -> cplx {
        const double x = (1.0 - t) / t;
        return (f.eval(x) + f.eval(-x)) / (t * t);
    };
    std::vector<double> breaks;
    for (double x : split_hints) {
        const double ax = std::abs(x);
        // t = 1/(1+|x|); bracket the feature with one octave on each side
        breaks.push_back(1.0 / (1.0 + 0.5 * ax));
        breaks.push_back(1.0 / (1.0 + ax));
        breaks.push_back(1.0 / (1.0 + 2.0 * ax));
    }
    return adaptive(transformed, 0.0, 1.0, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, 2,
                    breaks);
}

QuadResult integrate_double(const std::function<cplx(double, double)>& f2,
                            const QuadConfig& cfg) {
    cfg.validate();

    if (cfg.use_conjugate_symmetry) {
        static constexpr double kProbe[][2] = {
            {0.73, 0.31}, {-1.42, 2.17}, {0.08, 4.91}, {2.65, -0.57}};
        for (const auto& pr : kProbe) {
            const cplx v = f2(pr[0], pr[1]);
            const cplx w = f2(-pr[0], -pr[1]);
            if (std::abs(w - std::conj(v)) > 1e-8 * (std::abs(v) + 1e-300))
                fail(ErrorCode::SymmetryViolation,
                     "integrate_double: f2(-x,-y) != conj(f2(x,y)) at probe point");
        }
    }

    long inner_evals = 0;
    double max_inner_err = 0.0;

    QuadConfig inner_cfg = cfg;
    inner_cfg.rel_tol = cfg.inner_rel_tol;
    inner_cfg.abs_tol = cfg.abs_tol;

    auto inner = [&](double y) -> cplx {
        LineIntegrand li{[&f2, y](double x) { return f2(x, y); }, 0.0};
        // kernels of x+y type concentrate along the anti-diagonal; make sure
        // the inner subdivision starts with panels around |x| = |y|
        std::vector<double> hints;
        if (std::abs(y) > 1.0)
            hints.push_back(std::abs(y));
        QuadResult r = integrate_line(li, inner_cfg, hints);
        inner_evals += r.evaluations;
        max_inner_err = std::max(max_inner_err, r.error_estimate);
        return r.value;
    };

    QuadResult out;
    if (cfg.use_conjugate_symmetry) {
        // y >= 0 half plane, outer transform y = (1-t)/t on (0, 1]
        auto transformed = [&inner](double t) -> cplx {
            const double y = (1.0 - t) / t;
            return inner(y) / (t * t);
        };
        QuadResult half =
            adaptive(transformed, 0.0, 1.0, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, 0);
        out.value = cplx(2.0 * half.value.real(), 0.0);
        // outer estimate plus transformed-measure weighted max inner estimate
        out.error_estimate = 2.0 * (half.error_estimate + max_inner_err);
        out.evaluations = inner_evals;
    } else {
        LineIntegrand li{[&inner](double y) { return inner(y); }, 0.0};
        QuadConfig outer_cfg = cfg;
        QuadResult full = integrate_line(li, outer_cfg);
        out.value = full.value;
        out.error_estimate = full.error_estimate + 2.0 * max_inner_err;
        out.evaluations = inner_evals;
    }
    return out;
}

} // namespace lh::quad
