#pragma once

#include "black_scholes.hpp"
#include "strategies.hpp"

namespace lh {

struct HedgingProblem {
    LevyModel model;
    PayoffTransform transform;
    DeltaStrategy strategy;
    double s0 = 0.0;
    double capital = 0.0;
    double maturity = 0.0;

    void validate() const;
};

struct HedgingErrorReport {
    double w = 0.0;
    double mse = 0.0;
    double relative_error = 0.0;
    double quad_error = 0.0;
    double imag_residual = 0.0;
    double wall_time = 0.0;
};

// int_0^T s^m exp(a s) ds, total function (series branch for small |a| T).
cplx phi_m(cplx a, double maturity, int m);

// alpha(z,.) of the main error formula as a closed-form mix:
// alpha(z,t) = (1 - kappa(1) int_t^T e^{kappa(z)(s-T)} g(z,s) ds) e^{kappa(z)(T-t)}
ExpPolyMix alpha_mix(const LevyModel& model, const DeltaStrategy& strategy, double maturity,
                     cplx z);

// w = int S0^z alpha(z,0) p(z) dz (the mean value of the hedged position)
double mean_value_w(const HedgingProblem& problem, const quad::QuadConfig& cfg);

// the kernel J(y,z) of the double integral
cplx kernel_J(const HedgingProblem& problem, cplx y, cplx z);

// mse = (w-c)^2 + Re \iint J(y,z) p(y) p(z) dy dz
HedgingErrorReport hedging_error(const HedgingProblem& problem, const quad::QuadConfig& cfg);

// martingale model price of the claim: int S0^z e^{kappa(z) T} p(z) dz
double model_price(const LevyModel& model, const PayoffTransform& pt, double s0,
                   double maturity, const quad::QuadConfig& cfg);

// sigma* with BS price(sigma*) = model price of the claim
double implied_bs_sigma(const LevyModel& model, const PayoffTransform& pt, double s0,
                        double maturity, const quad::QuadConfig& cfg);

} // namespace lh
