#include "models.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace lh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7, n = 9 coefficients; ~15 significant digits.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double gamma_core(double x) {
    // x >= 0.5
    double a = kLanczos[0];
    const double t = x + 6.5;
    for (int i = 1; i < 9; ++i)
        a += kLanczos[i] / (x + i - 1.0);
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * a;
}

// log(1+w) and e^v - 1 without cancellation for small arguments
cplx clog1p(cplx w) {
    return cplx(0.5 * std::log1p(2.0 * w.real() + std::norm(w)),
                std::atan2(w.imag(), 1.0 + w.real()));
}

cplx cexpm1(cplx v) {
    const double em = std::expm1(v.real());
    const double c = std::cos(v.imag()), s = std::sin(v.imag());
    const double half = std::sin(0.5 * v.imag());
    return cplx(em * c - 2.0 * half * half, (em + 1.0) * s);
}

// w^y - b^y for w = b + shift, stable when the two powers are close
cplx pow_diff(cplx w, double b, double y) {
    if (std::abs(w - b) < 0.5 * b)
        return std::pow(b, y) * cexpm1(y * clog1p(w / b - 1.0));
    return std::pow(w, y) - std::pow(b, y);
}

} // namespace

double real_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x))
        fail(ErrorCode::PoleError, "gamma: pole at non-positive integer");
    if (x < 0.5)
        return kPi / (std::sin(kPi * x) * gamma_core(1.0 - x));
    return gamma_core(x);
}

LevyModel LevyModel::black_scholes(double sigma) {
    if (!(sigma > 0.0))
        fail(ErrorCode::InvalidParameters, "BlackScholes: sigma > 0 required");
    LevyModel m;
    m.kind_ = ModelKind::BlackScholes;
    m.p_[0] = sigma;
    m.lo_ = -kInf;
    m.hi_ = kInf;
    m.check_common();
    return m;
}

LevyModel LevyModel::nig(double alpha, double beta, double delta, double mu) {
    if (!(delta > 0.0) || !(std::abs(beta) <= alpha))
        fail(ErrorCode::InvalidParameters, "NIG: require delta > 0 and |beta| <= alpha");
    LevyModel m;
    m.kind_ = ModelKind::NIG;
    m.p_[0] = alpha;
    m.p_[1] = beta;
    m.p_[2] = delta;
    m.p_[3] = mu;
    m.lo_ = -alpha - beta;
    m.hi_ = alpha - beta;
    m.check_common();
    return m;
}

LevyModel LevyModel::cgmye(double c, double g, double mm, double y, double eta, double omega) {
    if (!(c > 0.0) || !(g > 0.0) || !(mm >= 0.0) || !(y < 2.0) || !(eta > 0.0))
        fail(ErrorCode::InvalidParameters,
             "CGMYe: require C > 0, G > 0, M >= 0, Y < 2, eta > 0");
    LevyModel m;
    m.kind_ = ModelKind::CGMYe;
    m.p_[0] = c;
    m.p_[1] = g;
    m.p_[2] = mm;
    m.p_[3] = y;
    m.p_[4] = eta;
    m.p_[5] = omega;
    m.lo_ = -g;
    m.hi_ = mm;
    m.check_common();
    return m;
}

LevyModel LevyModel::cgmye_martingale(double c, double g, double mm, double y, double eta) {
    if (!(mm > 1.0))
        fail(ErrorCode::InvalidParameters, "CGMYe martingale adjustment needs 1 in the strip");
    const double gy = real_gamma(-y);
    const double jump1 = c * gy * (std::pow(mm - 1.0, y) - std::pow(mm, y) +
                                   std::pow(g + 1.0, y) - std::pow(g, y));
    // kappa(1) = omega - eta^2/2 + eta^2/2 + jump1, so omega = -jump1
    return cgmye(c, g, mm, y, eta, -jump1);
}

void LevyModel::check_common() {
    if (!in_strip(2.0))
        fail(ErrorCode::InvalidParameters, "model: E(S_1^2) < inf requires 2 in the strip");
    const double nd = std::abs(kappa(2.0).real() - 2.0 * kappa(1.0).real());
    if (nd <= 1e-14)
        fail(ErrorCode::DegenerateModel, "model: kappa(2) - 2*kappa(1) = 0 (deterministic S)");
}

cplx LevyModel::kappa(cplx z) const {
    if (!in_strip(z.real()) && kind_ != ModelKind::BlackScholes)
        fail(ErrorCode::OutOfStrip, "kappa: Re z outside admissible strip");
    switch (kind_) {
    case ModelKind::BlackScholes: {
        const double s2 = p_[0] * p_[0];
        return 0.5 * s2 * z * (z - 1.0);
    }
    case ModelKind::NIG: {
        const double alpha = p_[0], beta = p_[1], delta = p_[2], mu = p_[3];
        const double gam = std::sqrt(alpha * alpha - beta * beta);
        const cplx arg = alpha * alpha - (beta + z) * (beta + z);
        // Re(arg) = alpha^2 - (beta+Re z)^2 + (Im z)^2 >= 0 on admissible lines,
        // so the principal square root is continuous there.
        if (arg.real() < -1e-9 * std::abs(arg) - 1e-12)
            fail(ErrorCode::BranchFailure, "NIG kappa: argument left the right half plane");
        // gam - sqrt(arg) rationalized: the direct difference of two values
        // near alpha loses digits that the error kernel cannot afford
        return mu * z + delta * z * (z + 2.0 * beta) / (gam + std::sqrt(arg));
    }
    case ModelKind::CGMYe: {
        const double c = p_[0], g = p_[1], mm = p_[2], y = p_[3], eta = p_[4], omega = p_[5];
        const double e2 = eta * eta;
        const double gy = real_gamma(-y);
        const cplx jumps = pow_diff(cplx(mm) - z, mm, y) + pow_diff(cplx(g) + z, g, y);
        return omega * z - 0.5 * e2 * z + 0.5 * e2 * z * z + c * gy * jumps;
    }
    }
    fail(ErrorCode::InvalidParameters, "kappa: unknown model kind");
}

bool LevyModel::is_martingale(double tol) const {
    return std::abs(kappa(1.0)) <= tol;
}

bool LevyModel::has_brownian_component() const {
    switch (kind_) {
    case ModelKind::BlackScholes:
        return true;
    case ModelKind::NIG:
        return false;
    case ModelKind::CGMYe:
        return p_[4] > 0.0;
    }
    return false;
}

namespace {

// nth derivative of f at 0 by a central stencil of step h, truncation O(h^2)
double stencil(const std::function<double(double)>& f, int n, double h) {
    switch (n) {
    case 2:
        return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
    case 3:
        return (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
    case 4:
        return (f(2.0 * h) - 4.0 * f(h) + 6.0 * f(0.0) - 4.0 * f(-h) + f(-2.0 * h)) /
               (h * h * h * h);
    }
    fail(ErrorCode::InvalidParameters, "stencil: unsupported derivative order");
}

double richardson(const std::function<double(double)>& f, int n, double h, double floor_abs) {
    const double d1 = stencil(f, n, h);
    const double d2 = stencil(f, n, h / 2.0);
    const double d3 = stencil(f, n, h / 4.0);
    const double a1 = (4.0 * d2 - d1) / 3.0;
    const double a2 = (4.0 * d3 - d2) / 3.0;
    const double extrap = (16.0 * a2 - a1) / 15.0;
    if (std::abs(a2 - a1) > 1e-4 * std::abs(extrap) + floor_abs)
        fail(ErrorCode::NumericalInstability,
             "moments: Richardson levels disagree beyond tolerance");
    return extrap;
}

} // namespace

MomentSet LevyModel::moments(double t) const {
    // Base step sized against the strip; roundoff in the 4th-derivative
    // stencil dominates below ~0.1, so the step is deliberately coarse.
    double h = 0.6;
    if (std::isfinite(lo_) || std::isfinite(hi_)) {
        const double dist = std::min(-lo_, hi_);
        if (!(dist > 0.0))
            fail(ErrorCode::OutOfStrip, "moments: 0 not interior to the strip");
        h = std::min(h, 0.2 * dist);
    }
    auto f = [this](double x) { return kappa(cplx(x)).real(); };

    const double k2 = richardson(f, 2, h, 1e-12);
    const double k3 = richardson(f, 3, h, 1e-10);
    const double k4 = richardson(f, 4, h, 1e-8);

    MomentSet m;
    m.horizon = t;
    m.variance = t * k2;
    const double sd = std::sqrt(m.variance);
    m.skewness = t * k3 / (sd * sd * sd);
    m.excess_kurtosis = t * k4 / (m.variance * m.variance);
    return m;
}

double LevyModel::match_bs_sigma() const {
    if (kind_ == ModelKind::BlackScholes)
        return p_[0];
    return std::sqrt(moments(1.0).variance);
}

LevyModel LevyModel::with_nig_mu(double mu) const {
    if (kind_ != ModelKind::NIG)
        fail(ErrorCode::InvalidParameters, "with_nig_mu: NIG model required");
    return nig(p_[0], p_[1], p_[2], mu);
}

} // namespace lh
