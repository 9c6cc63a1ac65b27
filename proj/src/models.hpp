#pragma once

#include <complex>

#include "errors.hpp"

namespace lh {

using cplx = std::complex<double>;

enum class ModelKind { BlackScholes, NIG, CGMYe };

struct MomentSet {
    double horizon = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

// Gamma function for real arguments, Lanczos approximation with reflection.
double real_gamma(double x);

// Exponential Levy model: discounted price S_t = S_0 exp(X_t), with X
// characterized by its cumulant generating function kappa on a vertical strip.
class LevyModel {
  public:
    static LevyModel black_scholes(double sigma);
    static LevyModel nig(double alpha, double beta, double delta, double mu);
    static LevyModel cgmye(double c, double g, double m, double y, double eta, double omega);
    // CGMYe with omega solved in closed form so that kappa(1) = 0.
    static LevyModel cgmye_martingale(double c, double g, double m, double y, double eta);

    cplx kappa(cplx z) const;

    ModelKind kind() const { return kind_; }
    double strip_lo() const { return lo_; }
    double strip_hi() const { return hi_; }
    bool in_strip(double re, double margin = 1e-9) const {
        return re > lo_ + margin && re < hi_ - margin;
    }

    bool is_martingale(double tol = 1e-10) const;
    bool has_brownian_component() const;

    // variance / skewness / excess kurtosis of X over horizon t, from central
    // finite differences of kappa with two Richardson levels.
    MomentSet moments(double t) const;
    // sigma of the Black-Scholes model with the same per-unit-time variance.
    double match_bs_sigma() const;

    // parameter accessors (valid for the respective kind only)
    double sigma() const { return p_[0]; }
    double nig_alpha() const { return p_[0]; }
    double nig_beta() const { return p_[1]; }
    double nig_delta() const { return p_[2]; }
    double nig_mu() const { return p_[3]; }
    double cgmye_c() const { return p_[0]; }
    double cgmye_g() const { return p_[1]; }
    double cgmye_m() const { return p_[2]; }
    double cgmye_y() const { return p_[3]; }
    double cgmye_eta() const { return p_[4]; }
    double cgmye_omega() const { return p_[5]; }

    // NIG with the location parameter replaced (used for drift sweeps).
    LevyModel with_nig_mu(double mu) const;

  private:
    LevyModel() = default;
    void check_common();

    ModelKind kind_ = ModelKind::BlackScholes;
    double p_[6] = {0, 0, 0, 0, 0, 0};
    double lo_ = 0.0, hi_ = 0.0;
};

} // namespace lh
