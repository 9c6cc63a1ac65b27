// Full-pipeline acceptance suite.  Each test case prints one line per check
// so a log shows the measured value, the target, and the verdict.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <vector>

#include "error_engine.hpp"
#include "mc_oracle.hpp"

using namespace lh;

namespace {

constexpr double kT = 0.25;
constexpr double kStrike = 99.0; // discounted strike
constexpr double kAbscissa = 1.1;
// "at the money": spot at the pre-discount strike of 100 (4% rate over a
// quarter discounts it to 99), which is where the reference figures are read
constexpr double kAtmSpot = 100.0;

LevyModel nig_paper() { return LevyModel::nig(75.49, -4.089, 3.024, -0.04); }

LevyModel cgmye_paper() { return LevyModel::cgmye_martingale(9.61, 9.97, 16.51, 0.1430, 0.0458); }

bool report(const char* crit, const char* what, double got, double want, double rel_tol) {
    const double dev = std::abs(got - want) / std::abs(want);
    const bool ok = dev <= rel_tol;
    std::printf("%s %-34s got=%.6f want=%.6f dev=%.3f%% tol=%.3f%% -> %s\n", crit, what, got,
                want, 100.0 * dev, 100.0 * rel_tol, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    return ok;
}

bool report_abs(const char* crit, const char* what, double got, double want, double abs_tol) {
    const bool ok = std::abs(got - want) <= abs_tol;
    std::printf("%s %-34s got=%.6f want=%.6f |diff|=%.2e tol=%.2e -> %s\n", crit, what, got,
                want, std::abs(got - want), abs_tol, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    return ok;
}

double engine_mse(const LevyModel& m, const DeltaStrategy& st, double s0, double capital,
                  const quad::QuadConfig& cfg, double abscissa = kAbscissa,
                  double* quad_err = nullptr) {
    HedgingProblem p{m, PayoffTransform::call(kStrike, abscissa), st, s0, capital, kT};
    const HedgingErrorReport r = hedging_error(p, cfg);
    if (quad_err)
        *quad_err = r.quad_error;
    return r.mse;
}

} // namespace

TEST_CASE("criterion 1: CGMYe at-the-money error reproduction") {
    const quad::QuadConfig cfg;
    const LevyModel m = cgmye_paper();
    const PayoffTransform pt = PayoffTransform::call(kStrike, kAbscissa);
    const double c = model_price(m, pt, kAtmSpot, kT, cfg);
    const double sigma = implied_bs_sigma(m, pt, kAtmSpot, kT, cfg);

    const double mse_mvo = engine_mse(m, DeltaStrategy::mvo_martingale(m, kT), kAtmSpot, c, cfg);
    const double mse_bs = engine_mse(m, DeltaStrategy::black_scholes(sigma, kT), kAtmSpot, c, cfg);
    const double mse_delta = engine_mse(m, DeltaStrategy::model_delta(m, kT), kAtmSpot, c, cfg);

    CHECK(report("criterion 1:", "variance-optimal mse", mse_mvo, 12.57, 0.01));
    CHECK(report("criterion 1:", "Black-Scholes hedge mse", mse_bs, 14.68, 0.01));
    CHECK(report("criterion 1:", "delta hedge mse", mse_delta, 16.41, 0.01));
}

TEST_CASE("criterion 2: NIG Black-Scholes hedge reproduction") {
    const quad::QuadConfig cfg;
    const LevyModel m = nig_paper();
    const double c = bs::call_price(kAtmSpot, kStrike, 0.2, kT);
    HedgingProblem p{m, PayoffTransform::call(kStrike, kAbscissa),
                     DeltaStrategy::black_scholes(0.2, kT), kAtmSpot, c, kT};
    const HedgingErrorReport r = hedging_error(p, cfg);
    CHECK(report("criterion 2:", "relative hedging error", r.relative_error, 0.118, 0.01));
}

TEST_CASE("criterion 3: moment reproduction") {
    const MomentSet nig_d = nig_paper().moments(1.0 / 252.0);
    const MomentSet nig_y = nig_paper().moments(1.0);
    CHECK(report("criterion 3:", "NIG daily skewness", nig_d.skewness, -0.1709, 0.005));
    CHECK(report("criterion 3:", "NIG daily excess kurtosis", nig_d.excess_kurtosis, 3.356,
                 0.005));
    CHECK(report_abs("criterion 3:", "NIG yearly skewness", nig_y.skewness, -0.0108, 5e-4));
    CHECK(report_abs("criterion 3:", "NIG yearly excess kurtosis", nig_y.excess_kurtosis,
                     0.0133, 5e-4));

    const MomentSet cg_d = cgmye_paper().moments(1.0 / 252.0);
    const MomentSet cg_y = cgmye_paper().moments(1.0);
    CHECK(report("criterion 3:", "CGMYe yearly skewness", cg_y.skewness, -0.2384, 0.01));
    CHECK(report("criterion 3:", "CGMYe yearly excess kurtosis", cg_y.excess_kurtosis, 0.2416,
                 0.01));
    // The daily reference pair is inconsistent with the yearly one: skewness
    // scales as 1/sqrt(t) and excess kurtosis as 1/t, so daily follows from
    // yearly as -0.2384*sqrt(252) = -3.784 and 0.2416*252 = 60.88, not the
    // reference (-3.852, 62.32).  That daily pair is recovered only when the
    // eta^2 Brownian variance is dropped from the normalization; this engine
    // keeps the full cumulant function, so these two checks fail.
    CHECK(report("criterion 3:", "CGMYe daily skewness", cg_d.skewness, -3.852, 0.01));
    CHECK(report("criterion 3:", "CGMYe daily excess kurtosis", cg_d.excess_kurtosis, 62.32,
                 0.01));
    // internal consistency of this engine's own scaling
    CHECK(cg_d.skewness ==
          doctest::Approx(cg_y.skewness * std::sqrt(252.0)).epsilon(1e-10));
    CHECK(cg_d.excess_kurtosis == doctest::Approx(cg_y.excess_kurtosis * 252.0).epsilon(1e-10));
}

TEST_CASE("criterion 4: perfect replication in the Black-Scholes model") {
    const quad::QuadConfig cfg;
    const LevyModel m = LevyModel::black_scholes(0.2);
    const double c = bs::call_price(99.0, kStrike, 0.2, kT);
    const PayoffTransform pt = PayoffTransform::call(kStrike, kAbscissa);
    HedgingProblem p{m, pt, DeltaStrategy::black_scholes(0.2, kT), 99.0, c, kT};
    const HedgingErrorReport r = hedging_error(p, cfg);
    CHECK(report_abs("criterion 4:", "replication mse", r.mse, 0.0, 1e-10));

    HedgingProblem p0{m, pt, DeltaStrategy::zero(kT), 99.0, c, kT};
    mc::Rng rng(123);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const cplx y(kAbscissa, 120.0 * (rng.next_uniform() - 0.5));
        const cplx z(kAbscissa, 120.0 * (rng.next_uniform() - 0.5));
        const double scale = std::abs(kernel_J(p0, y, z)) + 1.0;
        worst = std::max(worst, std::abs(kernel_J(p, y, z)) / scale);
    }
    CHECK(report_abs("criterion 4:", "max |J|/scale over 1000 points", worst, 0.0, 1e-12));
}

TEST_CASE("criterion 5: variance-optimal hedge is optimal") {
    quad::QuadConfig cfg;
    cfg.rel_tol = 1e-6; // ordering margins are orders of magnitude wider
    const LevyModel m = cgmye_paper();
    const PayoffTransform pt = PayoffTransform::call(kStrike, kAbscissa);
    const DeltaStrategy mvo = DeltaStrategy::mvo_martingale(m, kT);
    const DeltaStrategy delta = DeltaStrategy::model_delta(m, kT);

    bool grid_ok = true;
    for (int s0 = 80; s0 <= 120; ++s0) {
        const double c = model_price(m, pt, s0, kT, cfg);
        const double sigma = implied_bs_sigma(m, pt, s0, kT, cfg);
        double e_mvo = 0.0, e_bs = 0.0, e_delta = 0.0;
        const double m_mvo = engine_mse(m, mvo, s0, c, cfg, kAbscissa, &e_mvo);
        const double m_bs =
            engine_mse(m, DeltaStrategy::black_scholes(sigma, kT), s0, c, cfg, kAbscissa, &e_bs);
        const double m_delta = engine_mse(m, delta, s0, c, cfg, kAbscissa, &e_delta);
        const bool ok =
            m_mvo <= m_bs + e_mvo + e_bs && m_mvo <= m_delta + e_mvo + e_delta;
        if (!ok)
            std::printf("criterion 5: ordering violated at S0=%d: mvo=%.8f bs=%.8f delta=%.8f\n",
                        s0, m_mvo, m_bs, m_delta);
        grid_ok = grid_ok && ok;
    }
    std::printf("criterion 5: mse(MVO) <= mse(BS), mse(delta) on S0 in {80..120} -> %s\n",
                grid_ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    CHECK(grid_ok);

    // random multiplicative perturbations of the optimal integrand
    const double c = model_price(m, pt, 99.0, kT, cfg);
    const double m_opt = engine_mse(m, mvo, 99.0, c, cfg);
    const cplx k2 = m.kappa(2.0);
    mc::Rng rng(2024);
    bool pert_ok = true;
    for (int i = 0; i < 20; ++i) {
        const double u = rng.next_uniform();
        const double f = u < 0.5 ? 0.8 + 0.3 * u : 1.05 + 0.3 * (u - 0.5);
        DeltaStrategy pert = DeltaStrategy::custom(
            [&m, k2, f](cplx z) {
                const cplx lam = (m.kappa(z + 1.0) - m.kappa(z)) / k2;
                ExpPolyMix g;
                g.add(f * lam, 0, m.kappa(z));
                return g;
            },
            kT);
        const double m_pert = engine_mse(m, pert, 99.0, c, cfg);
        if (m_pert < m_opt - 1e-6)
            pert_ok = false;
    }
    std::printf("criterion 5: mse(MVO) <= 20 perturbed strategies -> %s\n",
                pert_ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    CHECK(pert_ok);
}

TEST_CASE("criterion 6: Monte Carlo cross-validation") {
    const quad::QuadConfig cfg;
    const PayoffTransform pt = PayoffTransform::call(kStrike, kAbscissa);

    {
        const LevyModel m = nig_paper();
        const DeltaStrategy st = DeltaStrategy::black_scholes(0.2, kT);
        const double c = bs::call_price(99.0, kStrike, 0.2, kT);
        HedgingProblem p{m, pt, st, 99.0, c, kT};
        const double engine = hedging_error(p, cfg).mse;

        mc::PathConfig pc;
        pc.n_paths = 100000;
        pc.n_steps = 2000;
        pc.seed = 1;
        pc.antithetic = true;
        const mc::MCEstimate est = mc::simulate_hedge(m, pt, st, 99.0, c, kT, pc, cfg);
        const double allowance = 3.0 * est.std_error + 0.02 * engine;
        std::printf("criterion 6: NIG engine=%.6f mc=%.6f (se=%.6f) |diff|=%.6f "
                    "allowance=%.6f -> %s\n",
                    engine, est.mse_hat, est.std_error, std::abs(est.mse_hat - engine),
                    allowance, std::abs(est.mse_hat - engine) <= allowance ? "PASS" : "FAIL");
        std::fflush(stdout);
        CHECK(std::abs(est.mse_hat - engine) <= allowance);
    }

    {
        const LevyModel m = LevyModel::black_scholes(0.2);
        const DeltaStrategy st = DeltaStrategy::black_scholes(0.2, kT);
        const double c = bs::call_price(99.0, kStrike, 0.2, kT);
        double mse[3];
        const int steps[3] = {500, 1000, 2000};
        for (int i = 0; i < 3; ++i) {
            mc::PathConfig pc;
            pc.n_paths = 20000;
            pc.n_steps = steps[i];
            pc.seed = 1;
            pc.antithetic = true;
            mse[i] = mc::simulate_hedge(m, pt, st, 99.0, c, kT, pc, cfg).mse_hat;
        }
        // the 1/n trend must extrapolate to about zero at infinite step count
        const double slope = (mse[0] - mse[2]) / (1.0 / 500.0 - 1.0 / 2000.0);
        const double intercept = mse[2] - slope / 2000.0;
        std::printf("criterion 6: BS control mse(500,1000,2000)=(%.6f, %.6f, %.6f) "
                    "extrapolated=%.6f -> %s\n",
                    mse[0], mse[1], mse[2], intercept,
                    std::abs(intercept) <= 0.5 * mse[2] ? "PASS" : "FAIL");
        std::fflush(stdout);
        CHECK(mse[2] < mse[1]);
        CHECK(mse[1] < mse[0]);
        CHECK(std::abs(intercept) <= 0.5 * mse[2]);
    }
}

TEST_CASE("criterion 7: drift sweep gap is smallest at the martingale point") {
    const quad::QuadConfig cfg;
    // the reference drift figure uses the pre-discount strike
    const double strike = 100.0, s0 = 100.0;
    const PayoffTransform pt = PayoffTransform::call(strike, kAbscissa);
    const LevyModel base = nig_paper();
    const double k1_base = base.kappa(1.0).real();

    int argmin = -1;
    double best = 0.0;
    for (int i = 0; i <= 8; ++i) {
        const double k1 = -0.2 + 0.05 * i;
        const LevyModel m = base.with_nig_mu(base.nig_mu() + (k1 - k1_base));
        if (i == 4)
            CHECK(std::abs(m.kappa(1.0).real()) <= 1e-12);
        // variance-optimal proxy: the martingale formula with the physical
        // cumulant function
        DeltaStrategy mvo = DeltaStrategy::custom(
            [m](cplx z) {
                const cplx den = m.kappa(2.0) - 2.0 * m.kappa(1.0);
                ExpPolyMix g;
                g.add((m.kappa(z + 1.0) - m.kappa(z) - m.kappa(1.0)) / den, 0, m.kappa(z));
                return g;
            },
            kT);
        HedgingProblem pb{m, pt, DeltaStrategy::black_scholes(0.2, kT), s0, 0.0, kT};
        pb.capital = mean_value_w(pb, cfg);
        HedgingProblem pv{m, pt, mvo, s0, 0.0, kT};
        pv.capital = mean_value_w(pv, cfg);
        const double mse_bs = hedging_error(pb, cfg).mse;
        const double mse_mvo = hedging_error(pv, cfg).mse;
        const double gap = std::abs(mse_bs - mse_mvo);
        CHECK(std::isfinite(mse_bs));
        CHECK(std::isfinite(mse_mvo));
        std::printf("criterion 7: kappa1=%+.2f mse_bs=%.6f mse_mvo=%.6f gap=%.6f\n", k1,
                    mse_bs, mse_mvo, gap);
        std::fflush(stdout);
        if (argmin < 0 || gap < best) {
            argmin = i;
            best = gap;
        }
    }
    std::printf("criterion 7: gap argmin at kappa1=%+.2f -> %s\n", -0.2 + 0.05 * argmin,
                argmin == 4 ? "PASS" : "FAIL");
    std::fflush(stdout);
    CHECK(argmin == 4);
}

TEST_CASE("criterion 8: abscissa robustness") {
    const quad::QuadConfig cfg;
    const LevyModel m = cgmye_paper();
    const PayoffTransform pt = PayoffTransform::call(kStrike, kAbscissa);
    const double c = model_price(m, pt, kAtmSpot, kT, cfg);
    const double sigma = implied_bs_sigma(m, pt, kAtmSpot, kT, cfg);
    const DeltaStrategy strategies[] = {DeltaStrategy::mvo_martingale(m, kT),
                                        DeltaStrategy::black_scholes(sigma, kT),
                                        DeltaStrategy::model_delta(m, kT)};
    const char* names[] = {"mvo", "bs", "delta"};
    for (int i = 0; i < 3; ++i) {
        double e1 = 0.0, e2 = 0.0;
        const double m1 = engine_mse(m, strategies[i], kAtmSpot, c, cfg, 1.1, &e1);
        const double m2 = engine_mse(m, strategies[i], kAtmSpot, c, cfg, 1.3, &e2);
        const double tol = 10.0 * (e1 + e2);
        std::printf("criterion 8: %-5s R=1.1: %.9f R=1.3: %.9f |diff|=%.2e tol=%.2e -> %s\n",
                    names[i], m1, m2, std::abs(m1 - m2), tol,
                    std::abs(m1 - m2) <= tol ? "PASS" : "FAIL");
        std::fflush(stdout);
        CHECK(std::abs(m1 - m2) <= tol);
    }
}

TEST_CASE("criterion 9: oracle equivalence micro-suite") {
    // phi_m against direct quadrature
    {
        double worst = 0.0;
        const cplx rates[] = {{0.0, 0.0}, {-40.0, 7.0}, {5.0, -60.0}, {1e-9, 0.0}};
        for (const cplx& a : rates)
            for (int deg = 0; deg <= 3; ++deg) {
                auto f = [&](double s) { return std::pow(s, deg) * std::exp(a * s); };
                const cplx want = quad::integrate_finite(f, 0.0, kT, 1e-13, 1e-16, 2000).value;
                worst = std::max(worst,
                                 std::abs(phi_m(a, kT, deg) - want) / (1.0 + std::abs(want)));
            }
        CHECK(report_abs("criterion 9:", "phi_m vs quadrature", worst, 0.0, 1e-12));
    }

    // alpha closed form against its defining integral and its ODE
    {
        const LevyModel m = nig_paper();
        const DeltaStrategy st = DeltaStrategy::black_scholes(0.2, kT);
        const cplx k1 = m.kappa(1.0);
        double worst_int = 0.0, worst_ode = 0.0;
        for (double zi : {0.0, 3.0, 40.0}) {
            const cplx z(kAbscissa, zi);
            const cplx kz = m.kappa(z);
            const ExpPolyMix a = alpha_mix(m, st, kT, z);
            const ExpPolyMix g = st.g(z);
            for (double t : {0.0, 0.12, 0.22}) {
                auto f = [&](double s) { return std::exp(kz * (s - kT)) * g.eval(s, kT); };
                const cplx integral =
                    quad::integrate_finite(f, t, kT, 1e-13, 1e-16, 2000).value;
                const cplx want = (1.0 - k1 * integral) * std::exp(kz * (kT - t));
                worst_int = std::max(worst_int, std::abs(a.eval(t, kT) - want) /
                                                    (1.0 + std::abs(want)));
                // 4th order stencil: 2nd order truncation is ~kappa^2 h^2 / 6,
                // borderline at zi = 40 where |kappa| is ~1e2.
                const double h = 1e-5;
                const cplx dadt = (-a.eval(t + 2 * h, kT) + 8.0 * a.eval(t + h, kT) -
                                   8.0 * a.eval(t - h, kT) + a.eval(t - 2 * h, kT)) /
                                  (12.0 * h);
                const cplx res = dadt - k1 * g.eval(t, kT) + kz * a.eval(t, kT);
                worst_ode = std::max(worst_ode,
                                     std::abs(res) / (1.0 + std::abs(kz * a.eval(t, kT))));
            }
        }
        CHECK(report_abs("criterion 9:", "alpha vs defining integral", worst_int, 0.0, 1e-10));
        CHECK(report_abs("criterion 9:", "alpha ODE residual", worst_ode, 0.0, 1e-8));
    }

    // payoff inversion across moneyness
    {
        quad::QuadConfig icfg;
        icfg.rel_tol = 1e-7;
        icfg.abs_tol = 1e-5;
        icfg.max_subdivisions = 200000;
        const PayoffTransform pt = PayoffTransform::call(kStrike, kAbscissa);
        double worst = 0.0;
        for (double s : {50.0, 80.0, 95.0, 99.0, 100.0, 105.0, 120.0, 150.0})
            worst = std::max(worst, std::abs(invert_payoff(pt, s, icfg) -
                                             std::max(s - kStrike, 0.0)));
        CHECK(report_abs("criterion 9:", "payoff inversion max error", worst, 0.0,
                         1e-6 * kStrike));
    }

    // Gaussian line integral
    {
        quad::QuadConfig gcfg;
        gcfg.rel_tol = 1e-13;
        gcfg.abs_tol = 1e-14;
        gcfg.inner_rel_tol = 1e-13;
        quad::LineIntegrand li{[](double x) -> cplx { return std::exp(-x * x); }, 0.0};
        const quad::QuadResult r = quad::integrate_line(li, gcfg);
        CHECK(report_abs("criterion 9:", "Gaussian line integral", r.value.real(),
                         std::sqrt(3.14159265358979323846), 1e-10));
    }
}
