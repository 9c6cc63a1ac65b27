#include "black_scholes.hpp"

#include <cmath>

#include "errors.hpp"

namespace lh::bs {

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double call_price(double s0, double strike, double sigma, double maturity) {
    if (maturity <= 0.0)
        return std::max(s0 - strike, 0.0);
    const double v = sigma * std::sqrt(maturity);
    const double d1 = (std::log(s0 / strike) + 0.5 * sigma * sigma * maturity) / v;
    return s0 * norm_cdf(d1) - strike * norm_cdf(d1 - v);
}

double call_delta(double s, double strike, double sigma, double tau) {
    if (tau <= 0.0)
        return s >= strike ? 1.0 : 0.0;
    const double v = sigma * std::sqrt(tau);
    return norm_cdf((std::log(s / strike) + 0.5 * sigma * sigma * tau) / v);
}

double implied_sigma(double target_price, double s0, double strike, double maturity) {
    double lo = 1e-4, hi = 3.0;
    double flo = call_price(s0, strike, lo, maturity) - target_price;
    double fhi = call_price(s0, strike, hi, maturity) - target_price;
    if (flo * fhi > 0.0)
        fail(ErrorCode::NoBracket, "implied_sigma: target price outside [sigma=1e-4, 3] range");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = call_price(s0, strike, mid, maturity) - target_price;
        if (std::abs(fm) < 1e-10)
            return mid;
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace lh::bs
