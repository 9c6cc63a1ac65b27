#include "error_engine.hpp"

#include <chrono>
#include <cmath>
#include <optional>

namespace lh {

namespace {

constexpr double kDegenerateRate = 0.02;  // |a| T threshold in alpha

// T^{m+1} sum_j (aT)^j / (j! (m+j+1)), summed to machine precision
cplx phi_series(cplx a, double T, int m) {
    const cplx aT = a * T;
    cplx term{1.0, 0.0};
    cplx sum{0.0, 0.0};
    for (int j = 0; j < 200; ++j) {
        const cplx inc = term / (m + j + 1.0);
        sum += inc;
        if (std::abs(inc) < 1e-18 * std::abs(sum) && j > 2)
            break;
        term *= aT / (j + 1.0);
    }
    double tp = T;
    for (int i = 0; i < m; ++i)
        tp *= T;
    return tp * sum;
}

// e^{kT} * phi_m(lam - k, T), computed without forming the two large
// exponentials' ratio (both e^{lam T} and e^{k T} stay bounded on the lines).
// The upward recursion loses m!/|aT|^m digits, so it is only used when
// |aT| clearly exceeds m; otherwise the series is exact to roundoff and its
// terms stay bounded by e^{|aT|}, which is harmless at this scale.
cplx exp_weighted_phi(cplx lam, cplx k, double T, int m) {
    const cplx a = lam - k;
    const cplx ek = std::exp(k * T);
    if (std::abs(a) * T < m + 2.0)
        return ek * phi_series(a, T, m);
    const cplx el = std::exp(lam * T);
    cplx psi = (el - ek) / a;
    double tp = 1.0;
    for (int i = 1; i <= m; ++i) {
        tp *= T;
        psi = (tp * el - static_cast<double>(i) * psi) / a;
    }
    return psi;
}

} // namespace

cplx phi_m(cplx a, double maturity, int m) {
    if (m < 0)
        fail(ErrorCode::InvalidParameters, "phi_m: m >= 0 required");
    return exp_weighted_phi(a, cplx(0.0, 0.0), maturity, m);
}

namespace {

// int_0^tau u^m e^{a u} du expressed in the basis {tau^j e^{a tau}, 1}:
// fills coefficients exp_coef[j] (on tau^j e^{a tau}) and the constant part.
void incomplete_mono_exp(cplx a, int m, cplx exp_coef[3], cplx& const_coef) {
    exp_coef[0] = exp_coef[1] = exp_coef[2] = cplx(0.0);
    switch (m) {
    case 0:
        exp_coef[0] = 1.0 / a;
        const_coef = -1.0 / a;
        return;
    case 1:
        exp_coef[1] = 1.0 / a;
        exp_coef[0] = -1.0 / (a * a);
        const_coef = 1.0 / (a * a);
        return;
    case 2:
        exp_coef[2] = 1.0 / a;
        exp_coef[1] = -2.0 / (a * a);
        exp_coef[0] = 2.0 / (a * a * a);
        const_coef = -2.0 / (a * a * a);
        return;
    }
    fail(ErrorCode::InvalidParameters, "alpha: strategy term degree above 2 unsupported");
}

} // namespace

ExpPolyMix alpha_mix(const LevyModel& model, const DeltaStrategy& strategy, double maturity,
                     cplx z) {
    const double T = maturity;
    const cplx kz = model.kappa(z);
    const cplx k1 = model.kappa(1.0);

    ExpPolyMix out;
    out.add(1.0, 0, kz);
    if (std::abs(k1) == 0.0)
        return out;

    const ExpPolyMix gz = strategy.g(z);
    for (const auto& term : gz.terms()) {
        const cplx a = term.rate - kz;
        if (std::abs(a) * T < kDegenerateRate) {
            // near-resonant exponent: expand int_0^tau u^m e^{au} du as
            // sum_j a^j tau^{m+j+1} / (j! (m+j+1)); six terms reach roundoff
            cplx aj{1.0, 0.0};
            double fact = 1.0;
            for (int j = 0; j < 6; ++j) {
                out.add(-k1 * term.coeff * aj / (fact * (term.degree + j + 1.0)),
                        term.degree + j + 1, kz);
                aj *= a;
                fact *= (j + 1.0);
            }
            continue;
        }
        cplx ec[3], cc;
        incomplete_mono_exp(a, term.degree, ec, cc);
        // -k1 * c * e^{kz tau} * (sum_j ec[j] tau^j e^{a tau} + cc)
        for (int j = 0; j <= term.degree; ++j)
            if (ec[j] != cplx(0.0))
                out.add(-k1 * term.coeff * ec[j], j, term.rate);
        out.add(-k1 * term.coeff * cc, 0, kz);
    }
    return out;
}

void HedgingProblem::validate() const {
    const double R = transform.abscissa();
    if (!(s0 > 0.0) || !(maturity > 0.0))
        fail(ErrorCode::InvalidParameters, "problem: require S0 > 0 and T > 0");
    if (!model.in_strip(2.0 * R) || !model.in_strip(R + 1.0) || !model.in_strip(2.0))
        fail(ErrorCode::OutOfStrip,
             "problem: 2R, R+1 and 2 must lie in the model strip");
}

double mean_value_w(const HedgingProblem& problem, const quad::QuadConfig& cfg) {
    const double R = problem.transform.abscissa();
    const double ls = std::log(problem.s0);
    const double T = problem.maturity;
    quad::LineIntegrand li{
        [&](double x) -> cplx {
            const cplx z(R, x);
            const ExpPolyMix a = alpha_mix(problem.model, problem.strategy, T, z);
            return std::exp(z * ls) * a.eval_tau(T) * cplx(0.0, 1.0) * problem.transform.p(z);
        },
        R};
    quad::QuadResult r = quad::integrate_line(li, cfg);
    if (std::abs(r.value.imag()) > 1e-6 * (1.0 + std::abs(r.value.real())))
        fail(ErrorCode::NonRealResult, "mean_value_w: imaginary residual above tolerance");
    return r.value.real();
}

namespace {

struct LineData {
    cplx z;
    cplx kz;   // kappa(z)
    cplx kz1;  // kappa(z+1)
    ExpPolyMix g;
    ExpPolyMix alpha;
};

struct EngineCtx {
    const HedgingProblem& prob;
    cplx k1, k2;
    double ls0;

    explicit EngineCtx(const HedgingProblem& p)
        : prob(p), k1(p.model.kappa(1.0)), k2(p.model.kappa(2.0)), ls0(std::log(p.s0)) {}

    LineData line_data(cplx z) const {
        LineData d;
        d.z = z;
        d.kz = prob.model.kappa(z);
        d.kz1 = prob.model.kappa(z + 1.0);
        d.g = prob.strategy.g(z);
        d.alpha = alpha_mix(prob.model, prob.strategy, prob.maturity, z);
        return d;
    }

    // int_0^T S0^{y+z} e^{kappa(y+z)s} M(T-s) ds for a mix M in tau = T-s
    cplx time_integral(const ExpPolyMix& mix, cplx kyz, cplx s0_pow) const {
        cplx sum{0.0, 0.0};
        for (const auto& t : mix.terms())
            sum += t.coeff * exp_weighted_phi(t.rate, kyz, prob.maturity, t.degree);
        return s0_pow * sum;
    }

    cplx J(const LineData& Y, const LineData& Z) const {
        const cplx kyz = prob.model.kappa(Y.z + Z.z);
        const cplx s0_pow = std::exp((Y.z + Z.z) * ls0);
        const cplx c_aa = kyz - Y.kz - Z.kz;
        const cplx c_ag = -(Y.kz1 - Y.kz - k1);
        const cplx c_ga = -(Z.kz1 - Z.kz - k1);
        const cplx c_gg = k2 - 2.0 * k1;
        return c_aa * time_integral(Y.alpha * Z.alpha, kyz, s0_pow) +
               c_ag * time_integral(Y.alpha * Z.g, kyz, s0_pow) +
               c_ga * time_integral(Z.alpha * Y.g, kyz, s0_pow) +
               c_gg * time_integral(Y.g * Z.g, kyz, s0_pow);
    }
};

} // namespace

cplx kernel_J(const HedgingProblem& problem, cplx y, cplx z) {
    EngineCtx ctx(problem);
    return ctx.J(ctx.line_data(y), ctx.line_data(z));
}

HedgingErrorReport hedging_error(const HedgingProblem& problem, const quad::QuadConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    problem.validate();

    EngineCtx ctx(problem);
    const double R = problem.transform.abscissa();

    quad::QuadConfig wcfg = cfg;
    quad::QuadResult wres;
    {
        const double ls = std::log(problem.s0);
        quad::LineIntegrand li{
            [&](double x) -> cplx {
                const cplx z(R, x);
                const ExpPolyMix a = ctx.line_data(z).alpha;
                return std::exp(z * ls) * a.eval_tau(problem.maturity) * cplx(0.0, 1.0) *
                       problem.transform.p(z);
            },
            R};
        wres = quad::integrate_line(li, wcfg);
    }
    if (std::abs(wres.value.imag()) > 1e-6 * (1.0 + std::abs(wres.value.real())))
        fail(ErrorCode::NonRealResult, "hedging_error: w has imaginary residual");
    const double w = wres.value.real();

    // memoize the outer line data: the nested integrator sweeps x at fixed y
    std::optional<std::pair<double, LineData>> ycache;
    auto f2 = [&](double x, double y) -> cplx {
        if (!ycache || ycache->first != y)
            ycache.emplace(y, ctx.line_data(cplx(R, y)));
        const LineData zd = ctx.line_data(cplx(R, x));
        const cplx py = cplx(0.0, 1.0) * problem.transform.p(cplx(R, y));
        const cplx pz = cplx(0.0, 1.0) * problem.transform.p(cplx(R, x));
        return ctx.J(ycache->second, zd) * py * pz;
    };

    quad::QuadResult dres = quad::integrate_double(f2, cfg);

    HedgingErrorReport rep;
    rep.w = w;
    rep.imag_residual = std::abs(dres.value.imag()) + std::abs(wres.value.imag());
    rep.quad_error = dres.error_estimate +
                     2.0 * std::abs(w - problem.capital) * wres.error_estimate;
    const double dc = w - problem.capital;
    rep.mse = dc * dc + dres.value.real();
    if (rep.mse < -rep.quad_error)
        fail(ErrorCode::NegativeMSE, "hedging_error: mse below the numerical floor");
    if (problem.capital > 0.0)
        rep.relative_error = std::sqrt(std::max(rep.mse, 0.0)) / problem.capital;
    rep.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

double model_price(const LevyModel& model, const PayoffTransform& pt, double s0,
                   double maturity, const quad::QuadConfig& cfg) {
    const double R = pt.abscissa();
    const double ls = std::log(s0);
    quad::LineIntegrand li{
        [&](double x) -> cplx {
            const cplx z(R, x);
            return std::exp(z * ls + model.kappa(z) * maturity) * cplx(0.0, 1.0) * pt.p(z);
        },
        R};
    quad::QuadResult r = quad::integrate_line(li, cfg);
    if (std::abs(r.value.imag()) > 1e-6 * (1.0 + std::abs(r.value.real())))
        fail(ErrorCode::NonRealResult, "model_price: imaginary residual above tolerance");
    return r.value.real();
}

double implied_bs_sigma(const LevyModel& model, const PayoffTransform& pt, double s0,
                        double maturity, const quad::QuadConfig& cfg) {
    if (!model.is_martingale())
        fail(ErrorCode::NotMartingale, "implied_bs_sigma: model must be a martingale model");
    const double price = model_price(model, pt, s0, maturity, cfg);
    if (!(price > 0.0) || !(price < s0))
        fail(ErrorCode::NoBracket, "implied_bs_sigma: model price outside (0, S0)");
    return bs::implied_sigma(price, s0, pt.descriptor().strike, maturity);
}

} // namespace lh
