/* C interface of the hedging-error library.
 *
 * All prices are discounted: the engine knows no interest rate, so strikes,
 * spots and capital must be handed over already discounted to time 0.
 * Objects are created by lh_*_new-style constructors, returned through an
 * out-parameter, and released with the matching lh_*_free.  Every fallible
 * call returns an lh_status; on failure the out-parameters are untouched and
 * lh_last_error() describes the problem for the calling thread. */

#ifndef LEVYHEDGE_H
#define LEVYHEDGE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lh_status {
    LH_OK = 0,
    LH_ERR_INVALID_ARGUMENT = 1, /* bad parameters, null handles, bad config */
    LH_ERR_DOMAIN = 2,           /* precondition violated (strip, martingale, ...) */
    LH_ERR_NUMERICAL = 3,        /* non-convergence or instability */
    LH_ERR_INTERNAL = 4
} lh_status;

/* message of the last failing call on this thread; empty string if none */
const char* lh_last_error(void);

typedef struct lh_model lh_model;
typedef struct lh_payoff lh_payoff;
typedef struct lh_strategy lh_strategy;

typedef struct lh_quad_config {
    double rel_tol;
    double abs_tol;
    int max_subdivisions;
    double inner_rel_tol;
    int use_conjugate_symmetry;
} lh_quad_config;

void lh_quad_config_init(lh_quad_config* cfg); /* library defaults */

/* models: discounted price S_t = S_0 exp(X_t) */
lh_status lh_model_black_scholes(double sigma, lh_model** out);
lh_status lh_model_nig(double alpha, double beta, double delta, double mu, lh_model** out);
lh_status lh_model_cgmye(double c, double g, double m, double y, double eta, double omega,
                         lh_model** out);
/* omega solved so that kappa(1) = 0 */
lh_status lh_model_cgmye_martingale(double c, double g, double m, double y, double eta,
                                    lh_model** out);
/* copy of an NIG model with the location parameter replaced (drift sweeps) */
lh_status lh_model_nig_with_mu(const lh_model* model, double mu, lh_model** out);
void lh_model_free(lh_model* model);

/* cumulant generating function kappa(z), z = re + i*im */
lh_status lh_model_kappa(const lh_model* model, double re, double im, double* out_re,
                         double* out_im);
/* variance, skewness, excess kurtosis of X over horizon t */
lh_status lh_model_moments(const lh_model* model, double t, double* out_variance,
                           double* out_skewness, double* out_excess_kurtosis);
/* sigma of the Black-Scholes model with the same per-unit-time variance */
lh_status lh_model_match_bs_sigma(const lh_model* model, double* out_sigma);
lh_status lh_model_is_martingale(const lh_model* model, int* out_flag);

/* payoffs as Bromwich data f(s) = int s^z p(z) dz on the line Re z = abscissa */
lh_status lh_payoff_call(double strike, double abscissa, lh_payoff** out);
void lh_payoff_free(lh_payoff* payoff);
/* f(s) by numerical inversion */
lh_status lh_payoff_value(const lh_payoff* payoff, double s, const lh_quad_config* cfg,
                          double* out_value);

/* Delta-strategies phi_t = int S^{z-1} g(z,t) p(z) dz */
lh_status lh_strategy_black_scholes(double sigma, double maturity, lh_strategy** out);
lh_status lh_strategy_model_delta(const lh_model* pricing_model, double maturity,
                                  int waive_brownian_check, lh_strategy** out);
lh_status lh_strategy_mvo_martingale(const lh_model* model, double maturity,
                                     lh_strategy** out);
/* the martingale MVO formula evaluated with the model's physical kappa;
 * coincides with lh_strategy_mvo_martingale when kappa(1) = 0 and serves as
 * the variance-optimal proxy in drift sweeps */
lh_status lh_strategy_mvo_local(const lh_model* model, double maturity, lh_strategy** out);
lh_status lh_strategy_zero(double maturity, lh_strategy** out);
void lh_strategy_free(lh_strategy* strategy);
/* hedge ratio phi(s, t); requires t < maturity */
lh_status lh_strategy_hedge_ratio(const lh_strategy* strategy, const lh_payoff* payoff,
                                  double s, double t, const lh_quad_config* cfg,
                                  double* out_ratio);

/* pricing helpers */
lh_status lh_model_price(const lh_model* model, const lh_payoff* payoff, double s0,
                         double maturity, const lh_quad_config* cfg, double* out_price);
lh_status lh_implied_bs_sigma(const lh_model* model, const lh_payoff* payoff, double s0,
                              double maturity, const lh_quad_config* cfg, double* out_sigma);
lh_status lh_bs_call_price(double s0, double strike, double sigma, double maturity,
                           double* out_price);

/* mean squared hedging error E[(H - c - gains)^2] of the continuously
 * rebalanced strategy, by the semi-explicit double-integral formula */
typedef struct lh_error_report {
    double w;              /* mean value of the hedged claim */
    double mse;            /* (w - capital)^2 + integral part */
    double relative_error; /* sqrt(mse) / capital (0 if capital == 0) */
    double quad_error;     /* accumulated quadrature error estimate */
    double imag_residual;  /* imaginary leakage diagnostic */
    double wall_time;      /* seconds */
} lh_error_report;

lh_status lh_hedging_error(const lh_model* model, const lh_payoff* payoff,
                           const lh_strategy* strategy, double s0, double capital,
                           double maturity, const lh_quad_config* cfg,
                           lh_error_report* out);
/* w alone (used to set capital = w) */
lh_status lh_mean_value(const lh_model* model, const lh_payoff* payoff,
                        const lh_strategy* strategy, double s0, double maturity,
                        const lh_quad_config* cfg, double* out_w);

/* Monte Carlo cross-check with discrete rebalancing (BS and NIG models) */
typedef struct lh_path_config {
    long n_paths;
    int n_steps;
    uint64_t seed;
    int antithetic;
    int n_threads;
} lh_path_config;

void lh_path_config_init(lh_path_config* cfg);

typedef struct lh_mc_estimate {
    double mse_hat;
    double std_error;
    double mean_error;
    long n_paths;
} lh_mc_estimate;

lh_status lh_mc_simulate_hedge(const lh_model* model, const lh_payoff* payoff,
                               const lh_strategy* strategy, double s0, double capital,
                               double maturity, const lh_path_config* path_cfg,
                               const lh_quad_config* quad_cfg, lh_mc_estimate* out);

typedef struct lh_moment_check {
    double sample_mean;
    double target;
    double std_error;
    double z_score;
    int pass;
} lh_moment_check;

/* verifies E[S_t^u] = S_0^u e^{t kappa(u)} within 4 standard errors */
lh_status lh_mc_moment_check(const lh_model* model, double u, double t, long n_paths,
                             uint64_t seed, lh_moment_check* out);

#ifdef __cplusplus
}
#endif

#endif /* LEVYHEDGE_H */
