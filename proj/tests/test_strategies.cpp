#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "black_scholes.hpp"
#include "strategies.hpp"

using namespace lh;

namespace {
quad::QuadConfig tight() {
    quad::QuadConfig cfg;
    cfg.rel_tol = 1e-9;
    cfg.abs_tol = 1e-12;
    cfg.inner_rel_tol = 1e-9;
    return cfg;
}

LevyModel nig_martingale() {
    // shift mu so that kappa(1) = 0
    LevyModel m = LevyModel::nig(75.49, -4.089, 3.024, -0.04);
    return m.with_nig_mu(m.nig_mu() - m.kappa(1.0).real());
}
} // namespace

TEST_CASE("exp-poly mix algebra") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        ExpPolyMix a, b;
        for (int i = 0; i < 3; ++i) {
            a.add({unif(gen), unif(gen)}, i % 2, {unif(gen), unif(gen)});
            b.add({unif(gen), unif(gen)}, i % 3, {unif(gen), unif(gen)});
        }
        const double tau = 0.3 + 0.5 * unif(gen);
        const cplx va = a.eval_tau(tau), vb = b.eval_tau(tau);
        CHECK(std::abs((a * b).eval_tau(tau) - va * vb) < 1e-12 * (1.0 + std::abs(va * vb)));
        const cplx f{0.7, -0.2};
        CHECK(std::abs(a.scaled(f).eval_tau(tau) - f * va) < 1e-13 * (1.0 + std::abs(va)));
    }
    CHECK(ExpPolyMix{}.empty());
    CHECK(ExpPolyMix{}.eval_tau(0.5) == cplx(0.0, 0.0));
}

TEST_CASE("bs strategy hedge ratio equals the closed-form delta") {
    const double sigma = 0.2, T = 0.25, K = 99.0;
    DeltaStrategy st = DeltaStrategy::black_scholes(sigma, T);
    PayoffTransform pt = PayoffTransform::call(K, 1.1);
    quad::QuadConfig cfg = tight();
    for (double s : {80.0, 95.0, 99.0, 103.0, 120.0}) {
        for (double t : {0.0, 0.1, 0.2, 0.24}) {
            const double want = bs::call_delta(s, K, sigma, T - t);
            CHECK(hedge_ratio(st, pt, s, t, cfg) == doctest::Approx(want).epsilon(1e-7));
        }
    }
}

TEST_CASE("model delta in the bs model matches the bs strategy") {
    const double sigma = 0.25, T = 0.5, K = 100.0;
    DeltaStrategy md = DeltaStrategy::model_delta(LevyModel::black_scholes(sigma), T);
    DeltaStrategy bs_st = DeltaStrategy::black_scholes(sigma, T);
    PayoffTransform pt = PayoffTransform::call(K, 1.1);
    quad::QuadConfig cfg = tight();
    for (double s : {90.0, 100.0, 110.0})
        CHECK(hedge_ratio(md, pt, s, 0.1, cfg) ==
              doctest::Approx(hedge_ratio(bs_st, pt, s, 0.1, cfg)).epsilon(1e-9));
}

TEST_CASE("mvo in the bs model reduces to the delta hedge") {
    // kappa(z) = sigma^2 z(z-1)/2 gives lambda(z) = z exactly
    const double sigma = 0.2, T = 0.25, K = 99.0;
    DeltaStrategy mvo = DeltaStrategy::mvo_martingale(LevyModel::black_scholes(sigma), T);
    PayoffTransform pt = PayoffTransform::call(K, 1.1);
    quad::QuadConfig cfg = tight();
    for (double s : {85.0, 99.0, 115.0})
        CHECK(hedge_ratio(mvo, pt, s, 0.05, cfg) ==
              doctest::Approx(bs::call_delta(s, K, sigma, T - 0.05)).epsilon(1e-7));
}

TEST_CASE("mvo weight equals one at z = 1 for martingale models") {
    // lambda(1) = (kappa(2) - 2 kappa(1)) / (kappa(2) - 2 kappa(1))
    LevyModel models[] = {nig_martingale(),
                          LevyModel::cgmye_martingale(9.61, 9.97, 16.51, 0.1430, 0.0458)};
    for (const auto& m : models) {
        DeltaStrategy mvo = DeltaStrategy::mvo_martingale(m, 0.25);
        const cplx g1 = mvo.g(cplx(1.0, 0.0)).eval_tau(0.0);
        CHECK(std::abs(g1 - cplx(1.0, 0.0)) < 1e-10);
    }
}

TEST_CASE("strategy preconditions") {
    LevyModel nig_phys = LevyModel::nig(75.49, -4.089, 3.024, -0.04);
    CHECK_THROWS_AS(DeltaStrategy::model_delta(nig_phys, 0.25), Error);
    CHECK_THROWS_AS(DeltaStrategy::mvo_martingale(nig_phys, 0.25), Error);

    // martingale NIG has no Brownian part: refused unless waived
    LevyModel nig_mart = nig_martingale();
    CHECK(nig_mart.is_martingale());
    CHECK_THROWS_AS(DeltaStrategy::model_delta(nig_mart, 0.25), Error);
    DeltaStrategy waived = DeltaStrategy::model_delta(nig_mart, 0.25, true);
    CHECK(waived.label() == StrategyLabel::ModelDelta);

    CHECK_THROWS_AS(DeltaStrategy::black_scholes(0.0, 0.25), Error);
    CHECK_THROWS_AS(DeltaStrategy::black_scholes(0.2, 0.0), Error);
}

TEST_CASE("hedge ratio domain checks") {
    DeltaStrategy st = DeltaStrategy::black_scholes(0.2, 0.25);
    PayoffTransform pt = PayoffTransform::call(99.0, 1.1);
    quad::QuadConfig cfg = tight();
    CHECK_THROWS_AS(hedge_ratio(st, pt, 99.0, 0.25, cfg), Error);
    CHECK_THROWS_AS(hedge_ratio(st, pt, 99.0, 0.3, cfg), Error);
    CHECK_THROWS_AS(hedge_ratio(st, pt, 0.0, 0.1, cfg), Error);
    CHECK(hedge_ratio(st, pt, 99.0, 0.2499, cfg) > 0.0);
}

TEST_CASE("zero strategy hedges nothing") {
    DeltaStrategy st = DeltaStrategy::zero(0.25);
    PayoffTransform pt = PayoffTransform::call(99.0, 1.1);
    CHECK(hedge_ratio(st, pt, 99.0, 0.1, tight()) == 0.0);
    CHECK(st.g(cplx(1.1, 3.0)).empty());
}

TEST_CASE("nig mvo hedge ratio is bounded and monotone in spot") {
    DeltaStrategy mvo = DeltaStrategy::mvo_martingale(nig_martingale(), 0.25);
    PayoffTransform pt = PayoffTransform::call(99.0, 1.1);
    quad::QuadConfig cfg = tight();
    double prev = -1.0;
    for (double s : {70.0, 85.0, 99.0, 115.0, 140.0}) {
        const double phi = hedge_ratio(mvo, pt, s, 0.0, cfg);
        CHECK(phi > prev);
        CHECK(phi > -0.05);
        CHECK(phi < 1.05);
        prev = phi;
    }
}
