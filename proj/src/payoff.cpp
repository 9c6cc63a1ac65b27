#include "payoff.hpp"

#include <cmath>

namespace lh {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PayoffTransform PayoffTransform::call(double strike, double abscissa) {
    if (!(strike > 0.0))
        fail(ErrorCode::InvalidParameters, "call payoff: strike > 0 required");
    if (!(abscissa > 1.0))
        fail(ErrorCode::InvalidAbscissa, "call payoff: abscissa R > 1 required");
    PayoffTransform pt;
    pt.R_ = abscissa;
    pt.desc_ = {PayoffKind::Call, strike, 0.0};
    pt.weight_ = [strike](cplx z) -> cplx {
        return std::pow(strike, cplx(1.0) - z) / (cplx(0.0, 2.0 * kPi) * z * (z - 1.0));
    };
    return pt;
}

PayoffTransform PayoffTransform::custom(double abscissa, std::function<cplx(cplx)> weight,
                                        PayoffDescriptor desc) {
    PayoffTransform pt;
    pt.R_ = abscissa;
    pt.weight_ = std::move(weight);
    pt.desc_ = desc;
    return pt;
}

double invert_payoff(const PayoffTransform& pt, double s, const quad::QuadConfig& cfg) {
    if (!(s > 0.0))
        fail(ErrorCode::InvalidParameters, "invert_payoff: s > 0 required");
    const double R = pt.abscissa();
    const double ls = std::log(s);
    quad::LineIntegrand li{
        [&pt, R, ls](double x) -> cplx {
            const cplx z(R, x);
            return std::exp(z * ls) * cplx(0.0, 1.0) * pt.p(z);
        },
        R};
    quad::QuadResult r = quad::integrate_line(li, cfg);
    if (std::abs(r.value.imag()) > 1e-6 * (1.0 + std::abs(r.value.real())))
        fail(ErrorCode::NonRealResult, "invert_payoff: imaginary residual above tolerance");
    return r.value.real();
}

} // namespace lh
