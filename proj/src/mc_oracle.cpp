#include "mc_oracle.hpp"

#include <atomic>
#include <cmath>
#include <memory>
#include <thread>
#include <vector>

namespace lh::mc {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s)
        w = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
}

double Rng::next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::next_normal() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

namespace {

// Michael-Schucany-Haas transformation; exact inverse Gaussian draw.
double sample_inverse_gaussian(double mean, double shape, Rng& rng) {
    const double z = rng.next_normal();
    const double nu = z * z;
    const double x = mean + mean * mean * nu / (2.0 * shape) -
                     (mean / (2.0 * shape)) *
                         std::sqrt(4.0 * mean * shape * nu + mean * mean * nu * nu);
    const double u = rng.next_uniform();
    if (u <= mean / (mean + x))
        return x;
    return mean * mean / x;
}

struct Sampler {
    const LevyModel& model;
    bool negate = false;

    double normal(Rng& rng) const {
        const double z = rng.next_normal();
        return negate ? -z : z;
    }

    double increment(double dt, Rng& rng) const {
        switch (model.kind()) {
        case ModelKind::BlackScholes: {
            const double sig = model.sigma();
            return -0.5 * sig * sig * dt + sig * std::sqrt(dt) * normal(rng);
        }
        case ModelKind::NIG: {
            const double alpha = model.nig_alpha(), beta = model.nig_beta();
            const double delta = model.nig_delta(), mu = model.nig_mu();
            const double gam = std::sqrt(alpha * alpha - beta * beta);
            const double dd = delta * dt;
            const double w = sample_inverse_gaussian(dd / gam, dd * dd, rng);
            return mu * dt + beta * w + std::sqrt(w) * normal(rng);
        }
        case ModelKind::CGMYe:
            fail(ErrorCode::UnsupportedModel,
                 "sampling: exact CGMYe increments are out of scope");
        }
        fail(ErrorCode::UnsupportedModel, "sampling: unknown model kind");
    }
};

// Hedge-ratio table on a (log S, t) lattice with local cubic interpolation.
class HedgeTable {
  public:
    HedgeTable(const DeltaStrategy& strategy, const PayoffTransform& pt, double s0,
               double maturity, int n_steps, const quad::QuadConfig& cfg, double sigma_hat) {
        n_rows_ = n_steps;
        dt_ = maturity / n_steps;
        const double strike = pt.descriptor().strike > 0 ? pt.descriptor().strike : s0;
        const double span = 8.0 * sigma_hat * std::sqrt(maturity) + 0.5;
        lo_ = std::min(std::log(s0), std::log(strike)) - span;
        hi_ = std::max(std::log(s0), std::log(strike)) + span;
        dx_ = (hi_ - lo_) / (kCols - 1);
        values_.resize(static_cast<size_t>(n_rows_) * kCols);
        for (int j = 0; j < n_rows_; ++j) {
            const double t = j * dt_;
            for (int i = 0; i < kCols; ++i)
                values_[static_cast<size_t>(j) * kCols + i] =
                    hedge_ratio(strategy, pt, std::exp(lo_ + i * dx_), t, cfg);
        }
        validate(strategy, pt, cfg);
    }

    double lookup(double s, int step) const {
        const double x = std::log(s);
        const double u = (x - lo_) / dx_;
        int i = static_cast<int>(std::floor(u));
        if (i < 1)
            i = 1;
        if (i > kCols - 3)
            i = kCols - 3;
        const double f = u - i;
        const double* row = &values_[static_cast<size_t>(step) * kCols];
        // Catmull-Rom through nodes i-1 .. i+2
        const double p0 = row[i - 1], p1 = row[i], p2 = row[i + 1], p3 = row[i + 2];
        return p1 + 0.5 * f * (p2 - p0 +
                               f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                    f * (3.0 * (p1 - p2) + p3 - p0)));
    }

  private:
    void validate(const DeltaStrategy& strategy, const PayoffTransform& pt,
                  const quad::QuadConfig& cfg) const {
        Rng rng(0xC0FFEEULL);
        for (int k = 0; k < 100; ++k) {
            const int j = static_cast<int>(rng.next_uniform() * n_rows_ * 0.9);
            const double x = lo_ + dx_ + rng.next_uniform() * (hi_ - lo_ - 2.0 * dx_);
            const double direct = hedge_ratio(strategy, pt, std::exp(x), j * dt_, cfg);
            if (std::abs(lookup(std::exp(x), j) - direct) > 1e-5 * (1.0 + std::abs(direct)))
                fail(ErrorCode::TableAccuracy,
                     "hedge table: interpolation check failed at a sample node");
        }
    }

    static constexpr int kCols = 401;
    int n_rows_ = 0;
    double dt_ = 0.0, lo_ = 0.0, hi_ = 0.0, dx_ = 0.0;
    std::vector<double> values_;
};

struct BlockSums {
    double sum_sq = 0.0, comp_sq = 0.0;
    double sum_q4 = 0.0, comp_q4 = 0.0;
    double sum_err = 0.0, comp_err = 0.0;

    static void kadd(double v, double& sum, double& comp) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    void add(double err) {
        const double e2 = err * err;
        kadd(e2, sum_sq, comp_sq);
        kadd(e2 * e2, sum_q4, comp_q4);
        kadd(err, sum_err, comp_err);
    }
};

} // namespace

double sample_increment(const LevyModel& model, double dt, Rng& rng) {
    Sampler s{model};
    return s.increment(dt, rng);
}

MCEstimate simulate_hedge(const LevyModel& model, const PayoffTransform& pt,
                          const DeltaStrategy& strategy, double s0, double capital,
                          double maturity, const PathConfig& path_cfg,
                          const quad::QuadConfig& quad_cfg) {
    if (path_cfg.n_paths < 1 || path_cfg.n_steps < 1)
        fail(ErrorCode::InvalidParameters, "simulate_hedge: n_paths >= 1, n_steps >= 1");
    const int n_steps = path_cfg.n_steps;
    const double dt = maturity / n_steps;
    const double strike = pt.descriptor().strike;
    const bool is_call = pt.descriptor().kind == PayoffKind::Call;

    // hedge-ratio source: closed-form fast path for the BS strategy, empty-g
    // shortcut for the zero strategy, precomputed table otherwise
    enum class Mode { BsDelta, Zero, Table } mode = Mode::Table;
    double bs_sig = 0.0;
    if (strategy.label() == StrategyLabel::BlackScholes && is_call) {
        mode = Mode::BsDelta;
        bs_sig = strategy.bs_sigma();
    } else if (strategy.g(cplx(pt.abscissa(), 0.3)).empty()) {
        mode = Mode::Zero;
    }
    std::unique_ptr<HedgeTable> table;
    if (mode == Mode::Table)
        table = std::make_unique<HedgeTable>(strategy, pt, s0, maturity, n_steps, quad_cfg,
                                             model.match_bs_sigma());

    const long n_paths = path_cfg.n_paths;
    constexpr long kBlock = 4096;
    const long n_blocks = (n_paths + kBlock - 1) / kBlock;
    std::vector<BlockSums> blocks(n_blocks);

    auto run_path = [&](long idx, BlockSums& acc) {
        const std::uint64_t stream = path_cfg.antithetic ? idx / 2 : idx;
        std::uint64_t sm = path_cfg.seed ^ (stream * 0xA3EC647659359ACDULL + 0x9E3779B9ULL);
        Rng rng(splitmix64(sm));
        Sampler sampler{model, path_cfg.antithetic && (idx % 2 == 1)};

        double s = s0;
        double gains = 0.0;
        for (int j = 0; j < n_steps; ++j) {
            double phi;
            switch (mode) {
            case Mode::BsDelta:
                phi = bs::call_delta(s, strike, bs_sig, maturity - j * dt);
                break;
            case Mode::Zero:
                phi = 0.0;
                break;
            default:
                phi = table->lookup(s, j);
            }
            const double s_next = s * std::exp(sampler.increment(dt, rng));
            gains += phi * (s_next - s);
            s = s_next;
        }
        const double payoff =
            is_call ? std::max(s - strike, 0.0) : invert_payoff(pt, s, quad_cfg);
        acc.add(payoff - capital - gains);
    };

    const int n_threads = std::max(1, path_cfg.n_threads);
    std::atomic<long> next_block{0};
    auto worker = [&]() {
        for (;;) {
            const long b = next_block.fetch_add(1);
            if (b >= n_blocks)
                return;
            const long begin = b * kBlock;
            const long end = std::min(n_paths, begin + kBlock);
            for (long i = begin; i < end; ++i)
                run_path(i, blocks[b]);
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    // combine in block order, compensated
    BlockSums total;
    for (const auto& b : blocks) {
        BlockSums::kadd(b.sum_sq, total.sum_sq, total.comp_sq);
        BlockSums::kadd(b.sum_q4, total.sum_q4, total.comp_q4);
        BlockSums::kadd(b.sum_err, total.sum_err, total.comp_err);
    }

    MCEstimate est;
    est.n_paths = n_paths;
    est.mse_hat = total.sum_sq / n_paths;
    est.mean_error = total.sum_err / n_paths;
    const double var_sq = total.sum_q4 / n_paths - est.mse_hat * est.mse_hat;
    est.std_error = std::sqrt(std::max(var_sq, 0.0) / n_paths);
    return est;
}

MomentCheckResult moment_check(const LevyModel& model, double u, double t, long n_paths,
                               std::uint64_t seed) {
    if (!model.in_strip(u))
        fail(ErrorCode::OutOfStrip, "moment_check: u outside the strip");
    const double target = std::exp(t * model.kappa(cplx(u)).real());
    double sum = 0.0, comp = 0.0, sum2 = 0.0, comp2 = 0.0;
    for (long i = 0; i < n_paths; ++i) {
        std::uint64_t sm = seed ^ (static_cast<std::uint64_t>(i) * 0xA3EC647659359ACDULL);
        Rng rng(splitmix64(sm));
        const double v = std::exp(u * sample_increment(model, t, rng));
        BlockSums::kadd(v, sum, comp);
        BlockSums::kadd(v * v, sum2, comp2);
    }
    MomentCheckResult r;
    r.sample_mean = sum / n_paths;
    r.target = target;
    const double var = sum2 / n_paths - r.sample_mean * r.sample_mean;
    r.std_error = std::sqrt(std::max(var, 0.0) / n_paths);
    r.z_score = (r.sample_mean - target) / (r.std_error + 1e-300);
    r.pass = std::abs(r.z_score) <= 4.0;
    return r;
}

} // namespace lh::mc
