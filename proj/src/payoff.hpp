#pragma once

#include <functional>
#include <string>

#include "quadrature.hpp"

namespace lh {

using cplx = std::complex<double>;

enum class PayoffKind { Call, Custom };

struct PayoffDescriptor {
    PayoffKind kind = PayoffKind::Custom;
    double strike = 0.0;
    double maturity = 0.0;
};

// Bromwich data of a payoff: f(s) = int_{R-i inf}^{R+i inf} s^z p(z) dz,
// with the 1/(2 pi i) normalization folded into p.
class PayoffTransform {
  public:
    // European call (s-K)^+ with p(z) = K^{1-z} / (2 pi i z (z-1)), R > 1.
    static PayoffTransform call(double strike, double abscissa);
    // User-supplied weight with the same integrability contract.
    static PayoffTransform custom(double abscissa, std::function<cplx(cplx)> weight,
                                  PayoffDescriptor desc = {});

    cplx p(cplx z) const { return weight_(z); }
    double abscissa() const { return R_; }
    const PayoffDescriptor& descriptor() const { return desc_; }

  private:
    double R_ = 0.0;
    std::function<cplx(cplx)> weight_;
    PayoffDescriptor desc_;
};

// f(s) as a real number by numerical inversion along the line.
double invert_payoff(const PayoffTransform& pt, double s, const quad::QuadConfig& cfg);

} // namespace lh
