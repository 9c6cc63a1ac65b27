#include "strategies.hpp"

#include <cmath>

namespace lh {

cplx ExpPolyMix::eval_tau(double tau) const {
    cplx sum{0.0, 0.0};
    for (const auto& t : terms_) {
        double poly = 1.0;
        for (int i = 0; i < t.degree; ++i)
            poly *= tau;
        sum += t.coeff * poly * std::exp(t.rate * tau);
    }
    return sum;
}

ExpPolyMix ExpPolyMix::operator*(const ExpPolyMix& other) const {
    ExpPolyMix out;
    for (const auto& a : terms_)
        for (const auto& b : other.terms_)
            out.add(a.coeff * b.coeff, a.degree + b.degree, a.rate + b.rate);
    return out;
}

ExpPolyMix ExpPolyMix::scaled(cplx factor) const {
    ExpPolyMix out;
    for (const auto& t : terms_)
        out.add(factor * t.coeff, t.degree, t.rate);
    return out;
}

DeltaStrategy DeltaStrategy::black_scholes(double sigma, double maturity) {
    if (!(sigma > 0.0) || !(maturity > 0.0))
        fail(ErrorCode::InvalidParameters, "bs strategy: sigma > 0 and T > 0 required");
    DeltaStrategy s;
    s.label_ = StrategyLabel::BlackScholes;
    s.maturity_ = maturity;
    s.bs_sigma_ = sigma;
    const double s2 = sigma * sigma;
    s.g_ = [s2](cplx z) {
        ExpPolyMix m;
        m.add(z, 0, 0.5 * s2 * z * (z - 1.0));
        return m;
    };
    return s;
}

DeltaStrategy DeltaStrategy::model_delta(const LevyModel& pricing_model, double maturity,
                                         bool waive_brownian_check) {
    if (!pricing_model.is_martingale())
        fail(ErrorCode::NotMartingale, "model delta: pricing model must satisfy kappa(1) = 0");
    if (!pricing_model.has_brownian_component() && !waive_brownian_check)
        fail(ErrorCode::NoBrownianComponent,
             "model delta: pricing model has no Brownian component (pass a waiver to override)");
    DeltaStrategy s;
    s.label_ = StrategyLabel::ModelDelta;
    s.maturity_ = maturity;
    s.g_ = [pricing_model](cplx z) {
        ExpPolyMix m;
        m.add(z, 0, pricing_model.kappa(z));
        return m;
    };
    return s;
}

DeltaStrategy DeltaStrategy::mvo_martingale(const LevyModel& model, double maturity) {
    if (!model.is_martingale())
        fail(ErrorCode::NotMartingale, "mvo strategy: model must satisfy kappa(1) = 0");
    const cplx k1 = model.kappa(1.0);
    const cplx k2 = model.kappa(2.0);
    const cplx denom = k2 - 2.0 * k1;
    if (std::abs(denom) <= 1e-14)
        fail(ErrorCode::DegenerateModel, "mvo strategy: kappa(2) - 2*kappa(1) = 0");
    DeltaStrategy s;
    s.label_ = StrategyLabel::MVOMartingale;
    s.maturity_ = maturity;
    s.g_ = [model, k1, denom](cplx z) {
        const cplx lam = (model.kappa(z + 1.0) - model.kappa(z) - k1) / denom;
        ExpPolyMix m;
        m.add(lam, 0, model.kappa(z));
        return m;
    };
    return s;
}

DeltaStrategy DeltaStrategy::custom(std::function<ExpPolyMix(cplx)> g, double maturity) {
    DeltaStrategy s;
    s.label_ = StrategyLabel::Custom;
    s.maturity_ = maturity;
    s.g_ = std::move(g);
    return s;
}

DeltaStrategy DeltaStrategy::zero(double maturity) {
    return custom([](cplx) { return ExpPolyMix{}; }, maturity);
}

double hedge_ratio(const DeltaStrategy& strategy, const PayoffTransform& pt, double s,
                   double t, const quad::QuadConfig& cfg) {
    if (!(s > 0.0))
        fail(ErrorCode::InvalidParameters, "hedge_ratio: s > 0 required");
    if (!(t < strategy.maturity()))
        fail(ErrorCode::InvalidParameters,
             "hedge_ratio: the integral may be undefined at t = T; require t < T");
    const double R = pt.abscissa();
    const double ls = std::log(s);
    const double T = strategy.maturity();
    quad::LineIntegrand li{
        [&](double x) -> cplx {
            const cplx z(R, x);
            return std::exp((z - 1.0) * ls) * strategy.g(z).eval(t, T) * cplx(0.0, 1.0) *
                   pt.p(z);
        },
        R};
    quad::QuadResult r = quad::integrate_line(li, cfg);
    if (std::abs(r.value.imag()) > 1e-6 * (1.0 + std::abs(r.value.real())))
        fail(ErrorCode::NonRealResult, "hedge_ratio: imaginary residual above tolerance");
    return r.value.real();
}

} // namespace lh
