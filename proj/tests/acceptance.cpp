// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL] line;
// the exit status is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ota/analysis.hpp"
#include "ota/engine.hpp"
#include "ota/experiment.hpp"

using namespace ota;

namespace {

bool g_ok = true;
void expect(bool cond, const char* what) {
    if (!cond) {
        std::printf("    violated: %s\n", what);
        g_ok = false;
    }
}

// --- 1. Lemma 1: individual outage probability ------------------------------

bool check_lemma1() {
    g_ok = true;
    const std::size_t trials = 1000000;
    std::uint64_t cell = 0;
    for (std::size_t m_k : {1, 2, 10, 30}) {
        for (double sigma_sq : {0.5, 1.0, 10.0}) {
            const double sigma_h_sq = 1.0;
            for (double p_bar : {1.0, 10.0}) {
                RngStream rng(7001, cell++);
                std::size_t outages = 0;
                for (std::size_t t = 0; t < trials; ++t) {
                    double psi = 0.0;
                    for (std::size_t i = 0; i < m_k; ++i)
                        psi = std::max(psi, std::norm(rng.cscg(sigma_sq)));
                    const double h_sq = std::norm(rng.cscg(sigma_h_sq));
                    if (psi > h_sq * p_bar) ++outages;
                }
                const double est = static_cast<double>(outages) / static_cast<double>(trials);
                const double exact = rho(m_k, sigma_sq / (sigma_h_sq * p_bar));
                const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
                if (std::abs(est - exact) > 3.0 * se) {
                    std::printf("    cell (M=%zu, s2=%g, P=%g): est %.6f exact %.6f se %.2g\n",
                                m_k, sigma_sq, p_bar, est, exact, se);
                    g_ok = false;
                }
            }
        }
    }
    return g_ok;
}

// --- 2. Compensation optimality ---------------------------------------------

double oracle_min_mse(cdouble h, double psi, double energy, double p_bar) {
    if (psi == 0.0 || psi <= std::norm(h) * p_bar) return 0.0;
    const double radius = std::sqrt(p_bar / psi);
    auto objective = [&](double theta) {
        const cdouble g = radius * cdouble{std::cos(theta), std::sin(theta)};
        return std::norm(1.0 - h * g) * energy;
    };
    double best_theta = 0.0, best = objective(0.0);
    for (int i = 1; i < 512; ++i) {
        const double th = 2.0 * std::numbers::pi * i / 512.0;
        if (const double v = objective(th); v < best) {
            best = v;
            best_theta = th;
        }
    }
    double a = best_theta - 2.0 * std::numbers::pi / 512.0;
    double b = best_theta + 2.0 * std::numbers::pi / 512.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 120; ++it) {
        const double c = b - gr * (b - a), d = a + gr * (b - a);
        if (objective(c) < objective(d))
            b = d;
        else
            a = c;
    }
    return objective(0.5 * (a + b));
}

bool check_compensation() {
    g_ok = true;
    RngStream rng(7002, 0);
    for (int rep = 0; rep < 10000; ++rep) {
        const cdouble h = rng.cscg(1.0);
        const double psi = std::pow(10.0, -2.0 + 4.0 * rng.uniform01());
        const double p_bar = std::pow(10.0, -1.0 + 2.0 * rng.uniform01());
        const double energy = psi * (1.0 + 9.0 * rng.uniform01());
        const auto r = compensate(h, psi, energy, p_bar);
        const double oracle = oracle_min_mse(h, psi, energy, p_bar);
        expect(std::abs(r.individual_mse - oracle) <= 1e-6 * std::max(oracle, 1e-9),
               "closed-form MSE within 1e-6 of the boundary-search oracle");
        expect(r.tx_power <= p_bar * (1.0 + 1e-9), "tx_power <= Pbar");
        const double bound = mse_bound_theorem1(psi, std::norm(h), p_bar);
        expect(r.individual_mse / energy <= bound + 1e-12, "bound dominates the optimum");
        if (!g_ok) break;
    }
    // exact crossing at |h|^2 = psi / (25 Pbar), E = 5 psi
    expect(mse_bound_theorem1(25.0, 1.0, 1.0) == 1.0, "bound equals 1 at the crossing (exact)");
    expect(std::abs(mse_bound_theorem1(1.0, 0.02, 2.0) - 1.0) <= 1e-12,
           "bound equals 1 at the Fig.-3 crossing");
    return g_ok;
}

// --- 3. Noise floor ----------------------------------------------------------

bool check_noise_floor() {
    g_ok = true;
    RoundConfig cfg;
    cfg.partition = uniform_partition(100, 100, 10, 10);
    cfg.channel = {1.0, 1.0, 1.0};
    cfg.max_power = 1e9;
    const double ref_energy = 100.0 * 100.0;
    const double expected = 100.0 * cfg.channel.noise_psd / cfg.channel.rx_power / ref_energy;
    const auto est = estimate_nmse(cfg, 10000, 7003);
    std::printf("    nmse %.6g expected %.6g se %.2g\n", est.mean, expected, est.std_error);
    expect(std::abs(est.mean - expected) <= 3.0 * est.std_error,
           "MSE equals (N0/Prx) M within 3 standard errors");
    return g_ok;
}

// --- 4. Example 2 repetition identity ---------------------------------------

bool check_repetition_identity() {
    g_ok = true;
    const cdouble h0{0.1, 0.0};
    RoundConfig cfg;
    cfg.partition = PartitionSpec{{4}, {1}};
    cfg.codes = {make_repetition_code(4, 2)};
    cfg.channel = {1.0, 0.01, 1.0};
    cfg.max_power = 1.0;
    cfg.h_override = [&](std::size_t, std::size_t, std::size_t seg) {
        return std::optional<cdouble>(seg == 0 ? h0 : cdouble{100.0, 0.0});
    };
    const std::size_t trials = 10000;
    double diff_sum = 0.0, diff_sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng(7004, t);
        const auto r = simulate_round(cfg, rng);
        const double psi = peak_power(r.y_true);
        const auto comp = compensate(h0, psi, 4.0, cfg.max_power);
        const double pred = 0.25 * std::norm(1.0 - h0 * comp.g_hat) * frob_norm_sq(r.y_true) +
                            cfg.channel.noise_psd * 4.0 / (2.0 * cfg.channel.rx_power);
        const double d = r.squared_error - pred;
        diff_sum += d;
        diff_sq += d * d;
    }
    const double mean = diff_sum / trials;
    const double se = std::sqrt((diff_sq / trials - mean * mean) / trials);
    std::printf("    mean residual %.3g (se %.3g)\n", mean, se);
    expect(std::abs(mean) <= 3.0 * se + 1e-12,
           "measured MSE matches (1/4)|1-g|^2 E||y||^2 + N0 M/(2 Prx)");
    return g_ok;
}

// --- 5. Bound ordering over the power sweep ----------------------------------

bool check_bound_ordering() {
    g_ok = true;
    const auto part = uniform_partition(100, 100, 10, 10);
    const auto sigma = default_sigma_sq(part);
    std::vector<double> sims, ses, b1s, b2s;
    for (int db = 0; db <= 30; db += 3) {
        const double p_bar = std::pow(10.0, db / 10.0);
        RoundConfig cfg;
        cfg.partition = part;
        cfg.channel = {1.0, 1.0, p_bar};
        cfg.max_power = p_bar;
        const auto est = estimate_nmse(cfg, 10000, 7005);
        const ChannelParams ch{1.0, 1.0, p_bar};
        const double b1 = mean_mse_bound1(part, sigma, ch, p_bar, true);
        const double b2 = mean_mse_bound2(part, sigma, ch, p_bar, 1000, true);
        std::printf("    P = %2d dB: nmse %.4g (se %.2g)  bound2 %.4g  bound1 %.4g\n", db,
                    est.mean, est.std_error, b2, b1);
        sims.push_back(est.mean);
        ses.push_back(est.std_error);
        b1s.push_back(b1);
        b2s.push_back(b2);
    }
    for (std::size_t i = 0; i < sims.size(); ++i) {
        expect(sims[i] <= b2s[i] + 3.0 * ses[i], "nmse_sim <= bound2 (3 se slack)");
        expect(b2s[i] <= b1s[i] * (1.0 + 1e-12), "bound2 <= bound1");
        if (i < 3) expect(b2s[i] < b1s[i] * (1.0 - 1e-6), "bound2 strictly tighter at low power");
        if (i > 0)
            expect(sims[i] <= sims[i - 1] + 3.0 * (ses[i] + ses[i - 1]),
                   "nmse_sim nonincreasing in Pbar");
    }
    return g_ok;
}

// --- 6. Partition monotonicity -----------------------------------------------

bool check_partition_monotonicity() {
    g_ok = true;
    const double p_bar = 1000.0;  // 30 dB at sigma_h^2 = N0 = 1
    auto sweep = [&](bool sweep_l) {
        std::vector<NmseEstimate> curve;
        for (std::size_t v = 4; v <= 256; v *= 2) {
            RoundConfig cfg;
            cfg.partition = sweep_l ? uniform_partition(100, 256, 10, v)
                                    : uniform_partition(256, 100, v, 10);
            cfg.channel = {1.0, 1.0, p_bar};
            cfg.max_power = p_bar;
            curve.push_back(estimate_nmse(cfg, 4000, 7006));
            std::printf("    %s = %3zu: nmse %.4g (se %.2g)\n", sweep_l ? "L" : "K", v,
                        curve.back().mean, curve.back().std_error);
        }
        return curve;
    };
    const auto l_curve = sweep(true);
    const auto k_curve = sweep(false);
    for (const auto* curve : {&l_curve, &k_curve})
        for (std::size_t i = 1; i < curve->size(); ++i)
            expect((*curve)[i].mean <=
                       (*curve)[i - 1].mean + 3.0 * ((*curve)[i].std_error +
                                                     (*curve)[i - 1].std_error),
                   "NMSE nonincreasing along the sweep");
    const double l_drop = l_curve.front().mean - l_curve.back().mean;
    const double k_drop = k_curve.front().mean - k_curve.back().mean;
    std::printf("    L-sweep drop %.4g vs K-sweep drop %.4g\n", l_drop, k_drop);
    expect(l_drop > k_drop, "the L sweep drops NMSE further than the K sweep");
    return g_ok;
}

// --- 7. Coding gain and asymptote ---------------------------------------------

bool check_coding_gain() {
    g_ok = true;
    const double p_bar = 1000.0;
    const auto part = uniform_partition(100, 100, 10, 10);
    std::vector<NmseEstimate> curve;
    for (std::size_t den : {1, 2, 3, 4}) {
        RoundConfig cfg;
        cfg.partition = part;
        cfg.channel = {1.0, 1.0, p_bar};
        cfg.max_power = p_bar;
        if (den > 1) {
            RngStream code_rng(7007, 1000 + den);
            cfg.codes = replicate_code(make_random_code(10, 10 * den, code_rng), part);
        }
        curve.push_back(estimate_nmse(cfg, 4000, 7007));
        std::printf("    r = 1/%zu: nmse %.4g (se %.2g)\n", den, curve.back().mean,
                    curve.back().std_error);
    }
    for (std::size_t i = 1; i < curve.size(); ++i)
        expect(curve[i].mean <
                   curve[i - 1].mean + 3.0 * (curve[i].std_error + curve[i - 1].std_error),
               "coded NMSE decreases as r decreases");
    expect(curve.back().mean < curve.front().mean, "r = 1/4 beats uncoded outright");

    for (std::size_t den : {1, 2, 3, 4}) {
        const std::size_t n = 10 * den;
        const double beta = beta_asymptote(n, 10, 10.0, 1.0, p_bar);
        if (beta < 0.1) {
            const double outage = coded_outage(n, 10, 10.0, 1.0, p_bar);
            const double ratio = (1.0 - std::exp(-beta)) / outage;
            std::printf("    n = %2zu: beta %.4f asymptote ratio %.4f\n", n, beta, ratio);
            expect(std::abs(ratio - 1.0) <= 0.05, "asymptote ratio within 5%");
        }
    }
    return g_ok;
}

// --- 8. CM baseline ------------------------------------------------------------

bool check_cm_baseline() {
    g_ok = true;
    const double p = 0.1;
    const std::size_t j_needed = 10, j_total = 15, trials = 1000000;
    RngStream rng(7008, 0);
    std::size_t failures = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::size_t outages = 0;
        for (std::size_t j = 0; j < j_total; ++j)
            if (rng.uniform01() < p) ++outages;
        if (outages > j_total - j_needed) ++failures;
    }
    const double est = static_cast<double>(failures) / static_cast<double>(trials);
    const double exact = cm_decoding_error(p, j_needed, j_total);
    const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
    std::printf("    decoding error: mc %.6g exact %.6g se %.2g\n", est, exact, se);
    expect(std::abs(est - exact) <= 3.0 * se, "binomial tail matches the Bernoulli oracle");

    for (int i = 1; i <= 100; ++i) {
        const double q = (1.0 / 3.0) * i / 101.0;  // applicable region J/Jbar < 1 - q
        expect(cm_decoding_error(q, j_needed, j_total) <=
                   cm_chernoff_bound(q, j_needed, j_total) * (1.0 + 1e-12),
               "Chernoff bound dominates");
    }

    CmParams cm;
    cm.snr = 1000.0;
    cm.j_needed = 100;
    cm.alpha = 1.0;
    const double full = cm_nmse(0.5, cm);
    cm.alpha = 0.5;
    const double half = cm_nmse(0.5, cm);
    expect(std::abs(half - std::sqrt(full)) <= 1e-12, "alpha = 0.5 NMSE is sqrt of alpha = 1");
    return g_ok;
}

// --- 9. Load balancing and completion outage ordering ---------------------------

bool check_load_balancing() {
    g_ok = true;
    const std::vector<double> clocks = {1.0, 10.0, 10.0, 40.0};
    auto ratio = [&](std::size_t l1) { return two_group_max_ratio(l1, 100, clocks); };
    const std::size_t l1 = balance_columns(100, ratio);
    std::printf("    L1 = %zu, max ratio %.4f\n", l1, ratio(l1));
    expect(l1 == 9, "balance_columns returns L1 = 9");
    for (std::size_t c = 1; c < 100; ++c)
        expect(ratio(l1) <= ratio(c), "exhaustive scan confirms minimality");

    std::vector<WorkerProfile> profiles;
    for (double c : clocks) profiles.push_back({c, 10.0, 1.0});
    const std::vector<double> loads_case1(4, 100.0);
    const std::vector<double> loads_case2 = {9.0, 91.0, 27.0, 273.0};
    const std::size_t trials = 100000;
    RngStream rng1(7009, 0), rng2(7009, 1);
    const auto s1 = completion_time_samples(loads_case1, profiles, trials, rng1);
    const auto s2 = completion_time_samples(loads_case2, profiles, trials, rng2);
    for (double d = 15.0; d <= 60.0; d += 15.0) {
        auto outage = [&](const std::vector<double>& s) {
            return static_cast<double>(std::count_if(s.begin(), s.end(),
                                                     [d](double t) { return t > d; })) /
                   static_cast<double>(trials);
        };
        const double o1 = outage(s1), o2 = outage(s2);
        std::printf("    deadline %3.0f: case1 %.4f case2 %.4f\n", d, o1, o2);
        expect(o1 > o2, "case 1 outage strictly exceeds case 2/3");
    }
    return g_ok;
}

// --- 10. Determinism -------------------------------------------------------------

bool check_determinism() {
    g_ok = true;
    ExperimentConfig cfg;
    cfg.scenario = "fig4";
    cfg.trials = 500;
    cfg.seed = 11;
    set_param(cfg, "P_dB_step", 15.0);
    const std::string a = format_csv(run_scenario(cfg));
    const std::string b = format_csv(run_scenario(cfg));
    expect(!a.empty() && a == b, "scenario rerun is byte-identical");

    RoundConfig rc;
    rc.partition = uniform_partition(20, 20, 2, 2);
    rc.channel = {1.0, 1.0, 10.0};
    rc.max_power = 10.0;
    const auto serial = estimate_nmse(rc, 1000, 13, 1);
    const auto parallel = estimate_nmse(rc, 1000, 13, 16);
    expect(serial.mean == parallel.mean && serial.std_error == parallel.std_error,
           "thread counts 1 and 16 agree bit-for-bit");
    return g_ok;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1. individual outage probability matches the closed form", check_lemma1},
        {"2. power-constrained compensation is optimal and bounded", check_compensation},
        {"3. unconstrained-power noise floor", check_noise_floor},
        {"4. repetition-coding conditional MSE identity", check_repetition_identity},
        {"5. bound ordering over the power sweep", check_bound_ordering},
        {"6. partition monotonicity and L-vs-K impact", check_partition_monotonicity},
        {"7. coding gain and large-n asymptote", check_coding_gain},
        {"8. digital baseline: tail, Chernoff, alpha scaling", check_cm_baseline},
        {"9. load balancing and completion outage ordering", check_load_balancing},
        {"10. byte-identical reruns under parallelism", check_determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const bool ok = c.run();
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", c.name);
        if (!ok) ++failed;
    }
    return failed;
}
