#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "errors.hpp"

namespace lh::quad {

using cplx = std::complex<double>;

// Integrand on a vertical Bromwich line R+iR, sampled by the real offset x.
// eval(x) must already contain all weights (including the i from dz) so that
// the line integral equals \int_{-inf}^{inf} eval(x) dx.
struct LineIntegrand {
    std::function<cplx(double)> eval;
    double abscissa = 0.0;
};

struct QuadConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double inner_rel_tol = 1e-9;
    bool use_conjugate_symmetry = true;

    void validate() const;
};

struct QuadResult {
    cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive GK15 on a finite interval [a, b].
QuadResult integrate_finite(const std::function<cplx(double)>& f, double a, double b,
                            double rel_tol, double abs_tol, int max_subdivisions);

// \int_{-inf}^{inf} f(x) dx via the two-sided algebraic transform x = (1-t)/t.
// split_hints lists |x| locations of known sharp features; the subdivision is
// seeded there so narrow far-out ridges are not missed by the first panels.
QuadResult integrate_line(const LineIntegrand& f, const QuadConfig& cfg,
                          const std::vector<double>& split_hints = {});

// \iint_{R^2} f2(x, y) dx dy by nested adaptive line integration.  With
// cfg.use_conjugate_symmetry the caller asserts f2(-x,-y) = conj(f2(x,y));
// the integral is then computed as 2 Re of the half plane y >= 0 and the
// identity is spot-checked at a few sample points.
QuadResult integrate_double(const std::function<cplx(double, double)>& f2,
                            const QuadConfig& cfg);

} // namespace lh::quad
