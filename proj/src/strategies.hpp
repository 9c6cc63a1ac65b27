#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "models.hpp"
#include "payoff.hpp"
#include "quadrature.hpp"

namespace lh {

// One term c * tau^m * exp(lambda * tau) in the time-to-maturity variable
// tau = T - t.
struct MixTerm {
    cplx coeff;
    int degree = 0;
    cplx rate;
};

// Finite sum of exponential-polynomial terms; closed-form carrier for
// g(z,.), alpha(z,.) and their products.
class ExpPolyMix {
  public:
    ExpPolyMix() = default;
    explicit ExpPolyMix(std::vector<MixTerm> terms) : terms_(std::move(terms)) {}

    void add(cplx coeff, int degree, cplx rate) { terms_.push_back({coeff, degree, rate}); }

    cplx eval_tau(double tau) const;
    cplx eval(double t, double maturity) const { return eval_tau(maturity - t); }

    ExpPolyMix operator*(const ExpPolyMix& other) const;
    ExpPolyMix scaled(cplx factor) const;

    const std::vector<MixTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

  private:
    std::vector<MixTerm> terms_;
};

enum class StrategyLabel { BlackScholes, ModelDelta, MVOMartingale, Custom };

// Family z -> g(z,.) defining the Delta-strategy phi(z)_t = S_{t-}^{z-1} g(z,t).
class DeltaStrategy {
  public:
    // g(z,.) = z * exp(sigma^2 z (z-1)/2 * tau)
    static DeltaStrategy black_scholes(double sigma, double maturity);
    // g(z,.) = z * exp(kappa~(z) * tau); pricing model must be a martingale
    // model with a Brownian component (or the caller waives the check).
    static DeltaStrategy model_delta(const LevyModel& pricing_model, double maturity,
                                     bool waive_brownian_check = false);
    // g(z,.) = lambda(z) exp(kappa(z) tau),
    // lambda(z) = (kappa(z+1)-kappa(z)-kappa(1)) / (kappa(2)-2 kappa(1))
    static DeltaStrategy mvo_martingale(const LevyModel& model, double maturity);
    static DeltaStrategy custom(std::function<ExpPolyMix(cplx)> g, double maturity);
    // empty g (no hedging); useful as a control strategy
    static DeltaStrategy zero(double maturity);

    ExpPolyMix g(cplx z) const { return g_(z); }
    StrategyLabel label() const { return label_; }
    double maturity() const { return maturity_; }
    // valid for the BlackScholes label only
    double bs_sigma() const { return bs_sigma_; }

  private:
    std::function<ExpPolyMix(cplx)> g_;
    StrategyLabel label_ = StrategyLabel::Custom;
    double maturity_ = 0.0;
    double bs_sigma_ = 0.0;
};

// phi_t = int s^{z-1} g(z,t) p(z) dz as a real number; refuses t >= T.
double hedge_ratio(const DeltaStrategy& strategy, const PayoffTransform& pt, double s,
                   double t, const quad::QuadConfig& cfg);

} // namespace lh
