// Batch front-end for the hedging-error library: grid sweeps over spot or
// drift, Monte Carlo cross-checks, and model moment tables.  Talks to the
// library exclusively through its C interface.
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <levyhedge.h>

using nlohmann::json;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& msg) { throw CliError{code, msg}; }

[[noreturn]] void die_last(int code, const std::string& context) {
    die(code, context + ": " + lh_last_error());
}

struct ModelHandle {
    lh_model* h = nullptr;
    ModelHandle() = default;
    explicit ModelHandle(lh_model* p) : h(p) {}
    ModelHandle(ModelHandle&& o) noexcept : h(o.h) { o.h = nullptr; }
    ModelHandle& operator=(ModelHandle&& o) noexcept {
        std::swap(h, o.h);
        return *this;
    }
    ModelHandle(const ModelHandle&) = delete;
    ~ModelHandle() { lh_model_free(h); }
};

struct PayoffHandle {
    lh_payoff* h = nullptr;
    ~PayoffHandle() { lh_payoff_free(h); }
};

struct StrategyHandle {
    lh_strategy* h = nullptr;
    StrategyHandle() = default;
    explicit StrategyHandle(lh_strategy* p) : h(p) {}
    StrategyHandle(StrategyHandle&& o) noexcept : h(o.h) { o.h = nullptr; }
    StrategyHandle& operator=(StrategyHandle&& o) noexcept {
        std::swap(h, o.h);
        return *this;
    }
    StrategyHandle(const StrategyHandle&) = delete;
    ~StrategyHandle() { lh_strategy_free(h); }
};

// ---- configuration ---------------------------------------------------------

struct StrategySpec {
    std::string type; // bs | bs_implied | bs_match | model_delta | mvo | mvo_local | zero
    double sigma = 0.0;
    std::string name;
};

struct Config {
    json model;
    double strike = 99.0;
    double abscissa = 1.1;
    double maturity = 0.25;
    std::vector<StrategySpec> strategies;
    json capital = "model_price";
    std::string grid_axis = "s0";
    double grid_from = 99.0, grid_to = 99.0, grid_step = 1.0;
    double s0 = 99.0; // fixed spot for mc-check / drift sweeps
    long mc_paths = 100000;
    int mc_steps = 2000;
    bool mc_antithetic = true;
};

const char* preset_json(const std::string& name) {
    if (name == "fig-nig")
        return R"({
          "model": {"type": "nig", "alpha": 75.49, "beta": -4.089, "delta": 3.024, "mu": -0.04},
          "payoff": {"strike": 99.0, "abscissa": 1.1},
          "maturity": 0.25,
          "strategies": [{"type": "bs", "sigma": 0.2}],
          "capital": "bs_price",
          "grid": {"axis": "s0", "from": 80, "to": 120, "step": 1}
        })";
    if (name == "fig-cgmye")
        return R"({
          "model": {"type": "cgmye", "c": 9.61, "g": 9.97, "m": 16.51, "y": 0.1430,
                    "eta": 0.0458, "martingale": true},
          "payoff": {"strike": 99.0, "abscissa": 1.1},
          "maturity": 0.25,
          "strategies": [{"type": "mvo"}, {"type": "bs_implied"}, {"type": "model_delta"}],
          "capital": "model_price",
          "grid": {"axis": "s0", "from": 80, "to": 120, "step": 1}
        })";
    if (name == "drift")
        return R"({
          "model": {"type": "nig", "alpha": 75.49, "beta": -4.089, "delta": 3.024, "mu": -0.04},
          "payoff": {"strike": 100.0, "abscissa": 1.1},
          "maturity": 0.25,
          "s0": 100.0,
          "strategies": [{"type": "bs", "sigma": 0.2}, {"type": "mvo_local"}],
          "capital": "w",
          "grid": {"axis": "kappa1", "from": -0.2, "to": 0.2, "step": 0.05}
        })";
    if (name == "mc-nig")
        return R"({
          "model": {"type": "nig", "alpha": 75.49, "beta": -4.089, "delta": 3.024, "mu": -0.04},
          "payoff": {"strike": 99.0, "abscissa": 1.1},
          "maturity": 0.25,
          "s0": 99.0,
          "strategies": [{"type": "bs", "sigma": 0.2}],
          "capital": "bs_price",
          "mc": {"n_paths": 100000, "n_steps": 2000, "antithetic": true}
        })";
    if (name == "mc-bs")
        return R"({
          "model": {"type": "bs", "sigma": 0.2},
          "payoff": {"strike": 99.0, "abscissa": 1.1},
          "maturity": 0.25,
          "s0": 99.0,
          "strategies": [{"type": "bs", "sigma": 0.2}],
          "capital": "bs_price",
          "mc": {"n_paths": 100000, "n_steps": 2000, "antithetic": true}
        })";
    if (name == "nig")
        return R"({"model": {"type": "nig", "alpha": 75.49, "beta": -4.089, "delta": 3.024,
                             "mu": -0.04}})";
    if (name == "cgmye")
        return R"({"model": {"type": "cgmye", "c": 9.61, "g": 9.97, "m": 16.51, "y": 0.1430,
                             "eta": 0.0458, "martingale": true}})";
    return nullptr;
}

json load_config_json(const std::string& config_path, const std::string& preset) {
    if (!config_path.empty() && !preset.empty())
        die(kExitConfig, "pass either --config or --preset, not both");
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in)
            die(kExitConfig, "cannot open config file: " + config_path);
        try {
            return json::parse(in);
        } catch (const json::exception& e) {
            die(kExitConfig, std::string("config parse error: ") + e.what());
        }
    }
    if (!preset.empty()) {
        const char* text = preset_json(preset);
        if (!text)
            die(kExitConfig, "unknown preset: " + preset +
                                 " (available: fig-nig, fig-cgmye, drift, mc-nig, mc-bs, "
                                 "nig, cgmye)");
        return json::parse(text);
    }
    die(kExitConfig, "one of --config or --preset is required");
}

Config parse_config(const json& j) {
    Config cfg;
    try {
        if (!j.contains("model"))
            die(kExitConfig, "config: missing \"model\"");
        cfg.model = j.at("model");
        if (j.contains("payoff")) {
            cfg.strike = j["payoff"].value("strike", cfg.strike);
            cfg.abscissa = j["payoff"].value("abscissa", cfg.abscissa);
        }
        cfg.maturity = j.value("maturity", cfg.maturity);
        cfg.s0 = j.value("s0", cfg.strike);
        if (j.contains("strategies")) {
            for (const auto& s : j.at("strategies")) {
                StrategySpec spec;
                spec.type = s.at("type").get<std::string>();
                spec.sigma = s.value("sigma", 0.0);
                spec.name = s.value("name", spec.type);
                cfg.strategies.push_back(spec);
            }
        }
        if (j.contains("capital"))
            cfg.capital = j.at("capital");
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            cfg.grid_axis = g.value("axis", std::string("s0"));
            cfg.grid_from = g.at("from").get<double>();
            cfg.grid_to = g.at("to").get<double>();
            cfg.grid_step = g.value("step", 1.0);
        } else {
            cfg.grid_from = cfg.grid_to = cfg.s0;
        }
        if (j.contains("mc")) {
            const auto& m = j.at("mc");
            cfg.mc_paths = m.value("n_paths", cfg.mc_paths);
            cfg.mc_steps = m.value("n_steps", cfg.mc_steps);
            cfg.mc_antithetic = m.value("antithetic", cfg.mc_antithetic);
        }
    } catch (const json::exception& e) {
        die(kExitConfig, std::string("config error: ") + e.what());
    }
    if (cfg.grid_step <= 0.0)
        die(kExitConfig, "config: grid step must be positive");
    if (cfg.grid_to < cfg.grid_from)
        die(kExitConfig, "config: grid \"to\" must not be below \"from\"");
    // one duplicate-safe name per strategy column
    for (size_t i = 0; i < cfg.strategies.size(); ++i)
        for (size_t k = 0; k < i; ++k)
            if (cfg.strategies[k].name == cfg.strategies[i].name)
                cfg.strategies[i].name += "_" + std::to_string(i);
    return cfg;
}

ModelHandle build_model(const json& spec) {
    lh_model* m = nullptr;
    lh_status st = LH_ERR_INVALID_ARGUMENT;
    const std::string type = spec.value("type", "");
    try {
        if (type == "bs") {
            st = lh_model_black_scholes(spec.at("sigma").get<double>(), &m);
        } else if (type == "nig") {
            st = lh_model_nig(spec.at("alpha").get<double>(), spec.at("beta").get<double>(),
                              spec.at("delta").get<double>(), spec.at("mu").get<double>(), &m);
        } else if (type == "cgmye") {
            if (spec.contains("omega"))
                st = lh_model_cgmye(spec.at("c").get<double>(), spec.at("g").get<double>(),
                                    spec.at("m").get<double>(), spec.at("y").get<double>(),
                                    spec.at("eta").get<double>(),
                                    spec.at("omega").get<double>(), &m);
            else
                st = lh_model_cgmye_martingale(
                    spec.at("c").get<double>(), spec.at("g").get<double>(),
                    spec.at("m").get<double>(), spec.at("y").get<double>(),
                    spec.at("eta").get<double>(), &m);
        } else {
            die(kExitConfig, "config: unknown model type \"" + type + "\"");
        }
    } catch (const json::exception& e) {
        die(kExitConfig, std::string("config: model spec: ") + e.what());
    }
    if (st != LH_OK)
        die_last(kExitConfig, "model construction failed");
    return ModelHandle(m);
}

StrategyHandle build_strategy(const StrategySpec& spec, const lh_model* model,
                              const lh_payoff* payoff, double s0, double maturity,
                              const lh_quad_config& qc) {
    lh_strategy* s = nullptr;
    lh_status st;
    if (spec.type == "bs") {
        if (!(spec.sigma > 0.0))
            die(kExitConfig, "strategy \"bs\" needs a positive sigma");
        st = lh_strategy_black_scholes(spec.sigma, maturity, &s);
    } else if (spec.type == "bs_implied") {
        double sigma = 0.0;
        if (lh_implied_bs_sigma(model, payoff, s0, maturity, &qc, &sigma) != LH_OK)
            die_last(kExitNumerical, "implied volatility failed");
        st = lh_strategy_black_scholes(sigma, maturity, &s);
    } else if (spec.type == "bs_match") {
        double sigma = 0.0;
        if (lh_model_match_bs_sigma(model, &sigma) != LH_OK)
            die_last(kExitNumerical, "variance matching failed");
        st = lh_strategy_black_scholes(sigma, maturity, &s);
    } else if (spec.type == "model_delta") {
        st = lh_strategy_model_delta(model, maturity, 1, &s);
    } else if (spec.type == "mvo") {
        st = lh_strategy_mvo_martingale(model, maturity, &s);
    } else if (spec.type == "mvo_local") {
        st = lh_strategy_mvo_local(model, maturity, &s);
    } else if (spec.type == "zero") {
        st = lh_strategy_zero(maturity, &s);
    } else {
        die(kExitConfig, "config: unknown strategy type \"" + spec.type + "\"");
    }
    if (st != LH_OK)
        die_last(st == LH_ERR_NUMERICAL ? kExitNumerical : kExitConfig,
                 "strategy \"" + spec.type + "\" construction failed");
    return StrategyHandle(s);
}

double resolve_capital(const json& policy, const Config& cfg, const lh_model* model,
                       const lh_payoff* payoff, const lh_strategy* strategy, double s0,
                       const lh_quad_config& qc) {
    if (policy.is_number())
        return policy.get<double>();
    const std::string name = policy.get<std::string>();
    double value = 0.0;
    if (name == "bs_price") {
        double sigma = 0.0;
        for (const auto& s : cfg.strategies)
            if (s.type == "bs" && s.sigma > 0.0) {
                sigma = s.sigma;
                break;
            }
        if (sigma <= 0.0)
            die(kExitConfig, "capital \"bs_price\" needs a \"bs\" strategy with a sigma");
        if (lh_bs_call_price(s0, cfg.strike, sigma, cfg.maturity, &value) != LH_OK)
            die_last(kExitNumerical, "pricing failed");
        return value;
    }
    if (name == "model_price") {
        if (lh_model_price(model, payoff, s0, cfg.maturity, &qc, &value) != LH_OK)
            die_last(kExitNumerical, "pricing failed");
        return value;
    }
    if (name == "w") {
        if (lh_mean_value(model, payoff, strategy, s0, cfg.maturity, &qc, &value) != LH_OK)
            die_last(kExitNumerical, "mean value failed");
        return value;
    }
    die(kExitConfig, "config: unknown capital policy \"" + name + "\"");
}

// ---- output ----------------------------------------------------------------

struct Output {
    std::FILE* f = stdout;
    bool owned = false;
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            f = std::fopen(path.c_str(), "w");
            if (!f)
                die(kExitConfig, "cannot open output file: " + path);
            owned = true;
        }
    }
    ~Output() {
        if (owned)
            std::fclose(f);
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

void print_reminder() {
    std::fprintf(stderr,
                 "note: all monetary inputs are discounted; a strike of 100 at a 4%% rate "
                 "over a quarter enters as the discounted strike 99\n");
}

// ---- subcommands -----------------------------------------------------------

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out = "-";
    double tol = 0.0;
    int threads = 1;
    std::uint64_t seed = 1;
};

lh_quad_config make_quad_config(const CommonArgs& args) {
    lh_quad_config qc;
    lh_quad_config_init(&qc);
    if (args.tol > 0.0)
        qc.rel_tol = args.tol;
    return qc;
}

int run_sweep(const CommonArgs& args) {
    const Config cfg = parse_config(load_config_json(args.config_path, args.preset));
    if (cfg.strategies.empty())
        die(kExitConfig, "config: at least one strategy is required");
    if (cfg.grid_axis != "s0")
        die(kExitConfig, "sweep expects a grid over \"s0\" (use drift-sweep for \"kappa1\")");
    const lh_quad_config qc = make_quad_config(args);
    print_reminder();

    const ModelHandle model = build_model(cfg.model);
    PayoffHandle payoff;
    if (lh_payoff_call(cfg.strike, cfg.abscissa, &payoff.h) != LH_OK)
        die_last(kExitConfig, "payoff construction failed");

    std::vector<double> grid;
    const long n_points =
        static_cast<long>((cfg.grid_to - cfg.grid_from) / cfg.grid_step + 1.5);
    for (long i = 0; i < n_points; ++i)
        grid.push_back(cfg.grid_from + i * cfg.grid_step);

    std::vector<std::string> rows(grid.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> any_failed{false};

    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size())
                return;
            const double s0 = grid[i];
            std::ostringstream row;
            row << fmt(s0);
            try {
                for (const auto& spec : cfg.strategies) {
                    const StrategyHandle strat = build_strategy(
                        spec, model.h, payoff.h, s0, cfg.maturity, qc);
                    const double capital = resolve_capital(cfg.capital, cfg, model.h,
                                                           payoff.h, strat.h, s0, qc);
                    lh_error_report rep;
                    if (lh_hedging_error(model.h, payoff.h, strat.h, s0, capital,
                                         cfg.maturity, &qc, &rep) != LH_OK)
                        die_last(kExitNumerical, "hedging error failed");
                    row << ',' << fmt(capital) << ',' << fmt(rep.w) << ',' << fmt(rep.mse)
                        << ',' << fmt(rep.relative_error) << ',' << fmt(rep.quad_error);
                }
            } catch (const CliError& e) {
                std::fprintf(stderr, "s0=%g: %s\n", s0, e.message.c_str());
                row.str("");
                row << fmt(s0) << ",ERROR";
                any_failed = true;
            }
            rows[i] = row.str();
        }
    };
    if (args.threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < args.threads; ++i)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    Output out(args.out);
    std::fprintf(out.f, "s0");
    for (const auto& spec : cfg.strategies)
        std::fprintf(out.f, ",capital_%s,w_%s,mse_%s,rel_%s,qerr_%s", spec.name.c_str(),
                     spec.name.c_str(), spec.name.c_str(), spec.name.c_str(),
                     spec.name.c_str());
    std::fprintf(out.f, "\n");
    for (const auto& row : rows)
        std::fprintf(out.f, "%s\n", row.c_str());
    return any_failed ? kExitNumerical : 0;
}

int run_drift_sweep(const CommonArgs& args) {
    const Config cfg = parse_config(load_config_json(args.config_path, args.preset));
    if (cfg.strategies.empty())
        die(kExitConfig, "config: at least one strategy is required");
    if (cfg.grid_axis != "kappa1")
        die(kExitConfig, "drift-sweep expects a grid over \"kappa1\"");
    if (cfg.model.value("type", "") != "nig")
        die(kExitConfig, "drift-sweep needs an NIG model (free location parameter)");
    const lh_quad_config qc = make_quad_config(args);
    print_reminder();

    const ModelHandle base = build_model(cfg.model);
    PayoffHandle payoff;
    if (lh_payoff_call(cfg.strike, cfg.abscissa, &payoff.h) != LH_OK)
        die_last(kExitConfig, "payoff construction failed");
    double k1_base = 0.0, im = 0.0;
    if (lh_model_kappa(base.h, 1.0, 0.0, &k1_base, &im) != LH_OK)
        die_last(kExitNumerical, "cumulant evaluation failed");
    const double mu_base = cfg.model.at("mu").get<double>();

    Output out(args.out);
    std::fprintf(out.f, "kappa1,mu");
    for (const auto& spec : cfg.strategies)
        std::fprintf(out.f, ",capital_%s,mse_%s,qerr_%s", spec.name.c_str(),
                     spec.name.c_str(), spec.name.c_str());
    std::fprintf(out.f, "\n");

    bool any_failed = false;
    const long n_points =
        static_cast<long>((cfg.grid_to - cfg.grid_from) / cfg.grid_step + 1.5);
    for (long i = 0; i < n_points; ++i) {
        const double k1 = cfg.grid_from + i * cfg.grid_step;
        // kappa(1) is affine in the location parameter with unit slope
        const double mu = mu_base + (k1 - k1_base);
        std::ostringstream row;
        row << fmt(k1) << ',' << fmt(mu);
        try {
            lh_model* shifted_raw = nullptr;
            if (lh_model_nig_with_mu(base.h, mu, &shifted_raw) != LH_OK)
                die_last(kExitNumerical, "drift shift failed");
            const ModelHandle shifted(shifted_raw);
            double check = 0.0;
            if (lh_model_kappa(shifted.h, 1.0, 0.0, &check, &im) != LH_OK)
                die_last(kExitNumerical, "cumulant evaluation failed");
            if (std::abs(check - k1) > 1e-12)
                die(kExitNumerical, "drift grid point failed its consistency check");
            for (const auto& spec : cfg.strategies) {
                const StrategyHandle strat = build_strategy(spec, shifted.h, payoff.h,
                                                            cfg.s0, cfg.maturity, qc);
                const double capital = resolve_capital(cfg.capital, cfg, shifted.h,
                                                       payoff.h, strat.h, cfg.s0, qc);
                lh_error_report rep;
                if (lh_hedging_error(shifted.h, payoff.h, strat.h, cfg.s0, capital,
                                     cfg.maturity, &qc, &rep) != LH_OK)
                    die_last(kExitNumerical, "hedging error failed");
                row << ',' << fmt(capital) << ',' << fmt(rep.mse) << ','
                    << fmt(rep.quad_error);
            }
        } catch (const CliError& e) {
            std::fprintf(stderr, "kappa1=%g: %s\n", k1, e.message.c_str());
            row.str("");
            row << fmt(k1) << ',' << fmt(mu) << ",ERROR";
            any_failed = true;
        }
        std::fprintf(out.f, "%s\n", row.str().c_str());
    }
    return any_failed ? kExitNumerical : 0;
}

int run_mc_check(const CommonArgs& args) {
    std::string preset = args.preset;
    if (args.config_path.empty() && preset.empty())
        preset = "mc-nig";
    const Config cfg = parse_config(load_config_json(args.config_path, preset));
    if (cfg.strategies.empty())
        die(kExitConfig, "config: at least one strategy is required");
    const lh_quad_config qc = make_quad_config(args);
    print_reminder();

    const ModelHandle model = build_model(cfg.model);
    PayoffHandle payoff;
    if (lh_payoff_call(cfg.strike, cfg.abscissa, &payoff.h) != LH_OK)
        die_last(kExitConfig, "payoff construction failed");

    lh_path_config pc;
    lh_path_config_init(&pc);
    pc.n_paths = cfg.mc_paths;
    pc.n_steps = cfg.mc_steps;
    pc.seed = args.seed;
    pc.antithetic = cfg.mc_antithetic ? 1 : 0;
    pc.n_threads = args.threads;

    Output out(args.out);
    std::fprintf(out.f, "strategy,engine_mse,mc_mse,mc_se,bias_est,z_after_allowance,verdict\n");
    bool any_bad = false;
    for (const auto& spec : cfg.strategies) {
        const StrategyHandle strat =
            build_strategy(spec, model.h, payoff.h, cfg.s0, cfg.maturity, qc);
        const double capital =
            resolve_capital(cfg.capital, cfg, model.h, payoff.h, strat.h, cfg.s0, qc);
        lh_error_report rep;
        if (lh_hedging_error(model.h, payoff.h, strat.h, cfg.s0, capital, cfg.maturity, &qc,
                             &rep) != LH_OK)
            die_last(kExitNumerical, "hedging error failed");
        lh_mc_estimate est;
        const lh_status st = lh_mc_simulate_hedge(model.h, payoff.h, strat.h, cfg.s0,
                                                  capital, cfg.maturity, &pc, &qc, &est);
        if (st == LH_ERR_DOMAIN)
            die_last(kExitConfig, "simulation unavailable for this model");
        if (st != LH_OK)
            die_last(kExitNumerical, "simulation failed");
        // finite rebalancing biases the estimate up by O(1/n_steps); estimate
        // that bias from a half-resolution run (a/(n/2) - a/n = a/n) and
        // allow it on top of a 2% engine margin
        lh_path_config half = pc;
        half.n_steps = std::max(1, pc.n_steps / 2);
        lh_mc_estimate est_half;
        if (lh_mc_simulate_hedge(model.h, payoff.h, strat.h, cfg.s0, capital, cfg.maturity,
                                 &half, &qc, &est_half) != LH_OK)
            die_last(kExitNumerical, "simulation failed");
        const double bias = std::max(0.0, est_half.mse_hat - est.mse_hat);
        const double excess = std::abs(est.mse_hat - rep.mse) - 0.02 * rep.mse - bias;
        const double z = est.std_error > 0.0 ? std::max(0.0, excess) / est.std_error : 0.0;
        const bool ok = z <= 4.0;
        any_bad = any_bad || !ok;
        std::fprintf(out.f, "%s,%s,%s,%s,%s,%s,%s\n", spec.name.c_str(),
                     fmt(rep.mse).c_str(), fmt(est.mse_hat).c_str(),
                     fmt(est.std_error).c_str(), fmt(bias).c_str(), fmt(z).c_str(),
                     ok ? "ok" : "mismatch");
    }
    return any_bad ? kExitNumerical : 0;
}

int run_moments(const CommonArgs& args) {
    const json j = load_config_json(args.config_path, args.preset);
    if (!j.contains("model"))
        die(kExitConfig, "config: missing \"model\"");
    const ModelHandle model = build_model(j.at("model"));
    Output out(args.out);
    std::fprintf(out.f, "horizon,variance,skewness,excess_kurtosis\n");
    const double horizons[] = {1.0 / 252.0, 1.0}; // daily (252 trading days), yearly
    const char* names[] = {"daily", "yearly"};
    for (int i = 0; i < 2; ++i) {
        double var = 0.0, skew = 0.0, kurt = 0.0;
        if (lh_model_moments(model.h, horizons[i], &var, &skew, &kurt) != LH_OK)
            die_last(kExitNumerical, "moment computation failed");
        std::fprintf(out.f, "%s,%s,%s,%s\n", names[i], fmt(var).c_str(), fmt(skew).c_str(),
                     fmt(kurt).c_str());
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_seed) {
    cmd->add_option("--config", args.config_path, "JSON experiment config file");
    cmd->add_option("--preset", args.preset, "named built-in configuration");
    cmd->add_option("--out", args.out, "output path, '-' for stdout (CSV, UTF-8, '.' "
                                       "decimals, header row)");
    cmd->add_option("--tol", args.tol, "quadrature relative tolerance override");
    cmd->add_option("--threads", args.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    if (with_seed)
        cmd->add_option("--seed", args.seed, "random seed for simulation");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hedging-error experiments for exponential Levy models"};
    app.require_subcommand(1);

    CommonArgs sweep_args, drift_args, mc_args, mom_args;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "hedging error over a spot grid; columns: s0, then per strategy "
                 "capital,w,mse,rel,qerr (presets: fig-nig, fig-cgmye)");
    add_common(sweep, sweep_args, false);
    CLI::App* drift = app.add_subcommand(
        "drift-sweep", "hedging error over a kappa(1) grid via the NIG location "
                       "parameter; columns: kappa1,mu, then per strategy capital,mse,qerr "
                       "(preset: drift)");
    add_common(drift, drift_args, false);
    CLI::App* mc = app.add_subcommand(
        "mc-check", "engine vs Monte Carlo comparison table (presets: mc-nig, mc-bs)");
    add_common(mc, mc_args, true);
    CLI::App* mom = app.add_subcommand(
        "moments", "daily and yearly variance/skewness/excess kurtosis (presets: nig, "
                   "cgmye)");
    add_common(mom, mom_args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (sweep->parsed())
            return run_sweep(sweep_args);
        if (drift->parsed())
            return run_drift_sweep(drift_args);
        if (mc->parsed())
            return run_mc_check(mc_args);
        if (mom->parsed())
            return run_moments(mom_args);
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitConfig;
}
