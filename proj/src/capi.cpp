#include "levyhedge.h"

#include <cstring>
#include <new>
#include <string>

#include "error_engine.hpp"
#include "mc_oracle.hpp"

namespace {

thread_local std::string g_last_error;

lh_status map_code(lh::ErrorCode code) {
    using EC = lh::ErrorCode;
    switch (code) {
    case EC::InvalidConfig:
    case EC::InvalidParameters:
    case EC::InvalidAbscissa:
        return LH_ERR_INVALID_ARGUMENT;
    case EC::OutOfStrip:
    case EC::NotMartingale:
    case EC::NoBrownianComponent:
    case EC::DegenerateModel:
    case EC::PoleError:
    case EC::UnsupportedModel:
        return LH_ERR_DOMAIN;
    case EC::NonConvergence:
    case EC::SymmetryViolation:
    case EC::BranchFailure:
    case EC::NumericalInstability:
    case EC::NonRealResult:
    case EC::NegativeMSE:
    case EC::NoBracket:
    case EC::TableAccuracy:
        return LH_ERR_NUMERICAL;
    }
    return LH_ERR_INTERNAL;
}

// runs the body, translating C++ exceptions into status codes
template <typename F>
lh_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return LH_OK;
    } catch (const lh::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return LH_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LH_ERR_INTERNAL;
    }
}

lh_status require(bool ok, const char* what) {
    if (ok)
        return LH_OK;
    g_last_error = what;
    return LH_ERR_INVALID_ARGUMENT;
}

lh::quad::QuadConfig to_cfg(const lh_quad_config* cfg) {
    lh::quad::QuadConfig out;
    if (cfg) {
        out.rel_tol = cfg->rel_tol;
        out.abs_tol = cfg->abs_tol;
        out.max_subdivisions = cfg->max_subdivisions;
        out.inner_rel_tol = cfg->inner_rel_tol;
        out.use_conjugate_symmetry = cfg->use_conjugate_symmetry != 0;
    }
    out.validate();
    return out;
}

} // namespace

struct lh_model {
    lh::LevyModel impl;
};

struct lh_payoff {
    lh::PayoffTransform impl;
};

struct lh_strategy {
    lh::DeltaStrategy impl;
};

extern "C" {

const char* lh_last_error(void) { return g_last_error.c_str(); }

void lh_quad_config_init(lh_quad_config* cfg) {
    if (!cfg)
        return;
    const lh::quad::QuadConfig d;
    cfg->rel_tol = d.rel_tol;
    cfg->abs_tol = d.abs_tol;
    cfg->max_subdivisions = d.max_subdivisions;
    cfg->inner_rel_tol = d.inner_rel_tol;
    cfg->use_conjugate_symmetry = d.use_conjugate_symmetry ? 1 : 0;
}

void lh_path_config_init(lh_path_config* cfg) {
    if (!cfg)
        return;
    const lh::mc::PathConfig d;
    cfg->n_paths = d.n_paths;
    cfg->n_steps = d.n_steps;
    cfg->seed = d.seed;
    cfg->antithetic = d.antithetic ? 1 : 0;
    cfg->n_threads = d.n_threads;
}

lh_status lh_model_black_scholes(double sigma, lh_model** out) {
    if (lh_status st = require(out != nullptr, "null out pointer"))
        return st;
    return guarded([&] { *out = new lh_model{lh::LevyModel::black_scholes(sigma)}; });
}

lh_status lh_model_nig(double alpha, double beta, double delta, double mu, lh_model** out) {
    if (lh_status st = require(out != nullptr, "null out pointer"))
        return st;
    return guarded([&] { *out = new lh_model{lh::LevyModel::nig(alpha, beta, delta, mu)}; });
}

lh_status lh_model_cgmye(double c, double g, double m, double y, double eta, double omega,
                         lh_model** out) {
    if (lh_status st = require(out != nullptr, "null out pointer"))
        return st;
    return guarded(
        [&] { *out = new lh_model{lh::LevyModel::cgmye(c, g, m, y, eta, omega)}; });
}

lh_status lh_model_cgmye_martingale(double c, double g, double m, double y, double eta,
                                    lh_model** out) {
    if (lh_status st = require(out != nullptr, "null out pointer"))
        return st;
    return guarded(
        [&] { *out = new lh_model{lh::LevyModel::cgmye_martingale(c, g, m, y, eta)}; });
}

lh_status lh_model_nig_with_mu(const lh_model* model, double mu, lh_model** out) {
    if (lh_status st = require(model && out, "null handle"))
        return st;
    return guarded([&] { *out = new lh_model{model->impl.with_nig_mu(mu)}; });
}

void lh_model_free(lh_model* model) { delete model; }

lh_status lh_model_kappa(const lh_model* model, double re, double im, double* out_re,
                         double* out_im) {
    if (lh_status st = require(model && out_re && out_im, "null handle"))
        return st;
    return guarded([&] {
        const lh::cplx k = model->impl.kappa(lh::cplx(re, im));
        *out_re = k.real();
        *out_im = k.imag();
    });
}

lh_status lh_model_moments(const lh_model* model, double t, double* out_variance,
                           double* out_skewness, double* out_excess_kurtosis) {
    if (lh_status st =
            require(model && out_variance && out_skewness && out_excess_kurtosis, "null handle"))
        return st;
    return guarded([&] {
        const lh::MomentSet m = model->impl.moments(t);
        *out_variance = m.variance;
        *out_skewness = m.skewness;
        *out_excess_kurtosis = m.excess_kurtosis;
    });
}

lh_status lh_model_match_bs_sigma(const lh_model* model, double* out_sigma) {
    if (lh_status st = require(model && out_sigma, "null handle"))
        return st;
    return guarded([&] { *out_sigma = model->impl.match_bs_sigma(); });
}

lh_status lh_model_is_martingale(const lh_model* model, int* out_flag) {
    if (lh_status st = require(model && out_flag, "null handle"))
        return st;
    return guarded([&] { *out_flag = model->impl.is_martingale() ? 1 : 0; });
}

lh_status lh_payoff_call(double strike, double abscissa, lh_payoff** out) {
    if (lh_status st = require(out != nullptr, "null out pointer"))
        return st;
    return guarded([&] { *out = new lh_payoff{lh::PayoffTransform::call(strike, abscissa)}; });
}

void lh_payoff_free(lh_payoff* payoff) { delete payoff; }

lh_status lh_payoff_value(const lh_payoff* payoff, double s, const lh_quad_config* cfg,
                          double* out_value) {
    if (lh_status st = require(payoff && out_value, "null handle"))
        return st;
    return guarded([&] { *out_value = lh::invert_payoff(payoff->impl, s, to_cfg(cfg)); });
}

lh_status lh_strategy_black_scholes(double sigma, double maturity, lh_strategy** out) {
    if (lh_status st = require(out != nullptr, "null out pointer"))
        return st;
    return guarded(
        [&] { *out = new lh_strategy{lh::DeltaStrategy::black_scholes(sigma, maturity)}; });
}

lh_status lh_strategy_model_delta(const lh_model* pricing_model, double maturity,
                                  int waive_brownian_check, lh_strategy** out) {
    if (lh_status st = require(pricing_model && out, "null handle"))
        return st;
    return guarded([&] {
        *out = new lh_strategy{lh::DeltaStrategy::model_delta(pricing_model->impl, maturity,
                                                              waive_brownian_check != 0)};
    });
}

lh_status lh_strategy_mvo_martingale(const lh_model* model, double maturity,
                                     lh_strategy** out) {
    if (lh_status st = require(model && out, "null handle"))
        return st;
    return guarded(
        [&] { *out = new lh_strategy{lh::DeltaStrategy::mvo_martingale(model->impl, maturity)}; });
}

lh_status lh_strategy_mvo_local(const lh_model* model, double maturity, lh_strategy** out) {
    if (lh_status st = require(model && out, "null handle"))
        return st;
    return guarded([&] {
        const lh::LevyModel m = model->impl;
        const lh::cplx den = m.kappa(2.0) - 2.0 * m.kappa(1.0);
        *out = new lh_strategy{lh::DeltaStrategy::custom(
            [m, den](lh::cplx z) {
                const lh::cplx lam = (m.kappa(z + 1.0) - m.kappa(z) - m.kappa(1.0)) / den;
                lh::ExpPolyMix g;
                g.add(lam, 0, m.kappa(z));
                return g;
            },
            maturity)};
    });
}

lh_status lh_strategy_zero(double maturity, lh_strategy** out) {
    if (lh_status st = require(out != nullptr, "null out pointer"))
        return st;
    return guarded([&] { *out = new lh_strategy{lh::DeltaStrategy::zero(maturity)}; });
}

void lh_strategy_free(lh_strategy* strategy) { delete strategy; }

lh_status lh_strategy_hedge_ratio(const lh_strategy* strategy, const lh_payoff* payoff,
                                  double s, double t, const lh_quad_config* cfg,
                                  double* out_ratio) {
    if (lh_status st = require(strategy && payoff && out_ratio, "null handle"))
        return st;
    return guarded(
        [&] { *out_ratio = lh::hedge_ratio(strategy->impl, payoff->impl, s, t, to_cfg(cfg)); });
}

lh_status lh_model_price(const lh_model* model, const lh_payoff* payoff, double s0,
                         double maturity, const lh_quad_config* cfg, double* out_price) {
    if (lh_status st = require(model && payoff && out_price, "null handle"))
        return st;
    return guarded([&] {
        *out_price = lh::model_price(model->impl, payoff->impl, s0, maturity, to_cfg(cfg));
    });
}

lh_status lh_implied_bs_sigma(const lh_model* model, const lh_payoff* payoff, double s0,
                              double maturity, const lh_quad_config* cfg, double* out_sigma) {
    if (lh_status st = require(model && payoff && out_sigma, "null handle"))
        return st;
    return guarded([&] {
        *out_sigma = lh::implied_bs_sigma(model->impl, payoff->impl, s0, maturity, to_cfg(cfg));
    });
}

lh_status lh_bs_call_price(double s0, double strike, double sigma, double maturity,
                           double* out_price) {
    if (lh_status st = require(out_price != nullptr, "null out pointer"))
        return st;
    return guarded([&] { *out_price = lh::bs::call_price(s0, strike, sigma, maturity); });
}

lh_status lh_hedging_error(const lh_model* model, const lh_payoff* payoff,
                           const lh_strategy* strategy, double s0, double capital,
                           double maturity, const lh_quad_config* cfg, lh_error_report* out) {
    if (lh_status st = require(model && payoff && strategy && out, "null handle"))
        return st;
    return guarded([&] {
        lh::HedgingProblem problem{model->impl, payoff->impl, strategy->impl, s0, capital,
                                   maturity};
        const lh::HedgingErrorReport r = lh::hedging_error(problem, to_cfg(cfg));
        out->w = r.w;
        out->mse = r.mse;
        out->relative_error = r.relative_error;
        out->quad_error = r.quad_error;
        out->imag_residual = r.imag_residual;
        out->wall_time = r.wall_time;
    });
}

lh_status lh_mean_value(const lh_model* model, const lh_payoff* payoff,
                        const lh_strategy* strategy, double s0, double maturity,
                        const lh_quad_config* cfg, double* out_w) {
    if (lh_status st = require(model && payoff && strategy && out_w, "null handle"))
        return st;
    return guarded([&] {
        lh::HedgingProblem problem{model->impl, payoff->impl, strategy->impl, s0, 0.0,
                                   maturity};
        *out_w = lh::mean_value_w(problem, to_cfg(cfg));
    });
}

lh_status lh_mc_simulate_hedge(const lh_model* model, const lh_payoff* payoff,
                               const lh_strategy* strategy, double s0, double capital,
                               double maturity, const lh_path_config* path_cfg,
                               const lh_quad_config* quad_cfg, lh_mc_estimate* out) {
    if (lh_status st = require(model && payoff && strategy && out, "null handle"))
        return st;
    return guarded([&] {
        lh::mc::PathConfig pc;
        if (path_cfg) {
            pc.n_paths = path_cfg->n_paths;
            pc.n_steps = path_cfg->n_steps;
            pc.seed = path_cfg->seed;
            pc.antithetic = path_cfg->antithetic != 0;
            pc.n_threads = path_cfg->n_threads;
        }
        const lh::mc::MCEstimate est = lh::mc::simulate_hedge(
            model->impl, payoff->impl, strategy->impl, s0, capital, maturity, pc,
            to_cfg(quad_cfg));
        out->mse_hat = est.mse_hat;
        out->std_error = est.std_error;
        out->mean_error = est.mean_error;
        out->n_paths = est.n_paths;
    });
}

lh_status lh_mc_moment_check(const lh_model* model, double u, double t, long n_paths,
                             uint64_t seed, lh_moment_check* out) {
    if (lh_status st = require(model && out, "null handle"))
        return st;
    return guarded([&] {
        const lh::mc::MomentCheckResult r =
            lh::mc::moment_check(model->impl, u, t, n_paths, seed);
        out->sample_mean = r.sample_mean;
        out->target = r.target;
        out->std_error = r.std_error;
        out->z_score = r.z_score;
        out->pass = r.pass ? 1 : 0;
    });
}

} // extern "C"
