#pragma once

namespace lh::bs {

double norm_cdf(double x);

// zero-rate (discounted) Black-Scholes call price and delta
double call_price(double s0, double strike, double sigma, double maturity);
double call_delta(double s, double strike, double sigma, double tau);

// sigma* with call_price(sigma*) = target, by bisection on [1e-4, 3]
double implied_sigma(double target_price, double s0, double strike, double maturity);

} // namespace lh::bs
