#include "ota/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ota/analysis.hpp"
#include "ota/engine.hpp"

namespace ota {
namespace {

const std::set<std::string>& param_vocabulary() {
    static const std::set<std::string> vocab = {
        "K", "L", "M_k", "Q_l", "N_k", "sigma_h_sq", "N_0", "P_dB", "SNR_dB",
        "alpha", "p_err_target", "tau",
        "deadline_min", "deadline_max", "deadline_step",
        "h_sq_min", "h_sq_max", "h_sq_step",
        "P_dB_min", "P_dB_max", "P_dB_step",
    };
    return vocab;
}

double get_param(const ExperimentConfig& cfg, const std::string& key, double fallback) {
    const auto it = cfg.params.find(key);
    return it == cfg.params.end() ? fallback : it->second;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::size_t nmse_trials(const ExperimentConfig& cfg) {
    const std::size_t t = cfg.trials == 0 ? 10000 : cfg.trials;
    if (!cfg.analytic_only && t < 100)
        throw std::invalid_argument("NMSE scenarios need trials >= 100");
    return t;
}

// Stream-id ranges: trial t uses stream t, so fixed structures (the random
// encoder) live far above any realistic trial count.
constexpr std::uint64_t kCodeStreamBase = 0x636F6465ull << 32;

RoundConfig make_round_config(const PartitionSpec& part, const std::vector<CodingScheme>& codes,
                              double sigma_h_sq, double noise_psd, double p_bar) {
    RoundConfig rc;
    rc.partition = part;
    rc.codes = codes;
    rc.channel = {sigma_h_sq, noise_psd, p_bar};  // P_rx = Pbar throughout
    rc.max_power = p_bar;
    return rc;
}

ResultRow sim_row(const std::string& scenario, const std::string& sweep_param,
                  double sweep_value, const std::string& metric, const NmseEstimate& est) {
    return {scenario, sweep_param, sweep_value, metric, est.mean, est.std_error, est.trials};
}

ResultRow analytic_row(const std::string& scenario, const std::string& sweep_param,
                       double sweep_value, const std::string& metric, double value) {
    return {scenario, sweep_param, sweep_value, metric, value, 0.0, 0};
}

std::vector<ResultRow> scenario_fig2(const ExperimentConfig& cfg) {
    const std::size_t trials = cfg.trials == 0 ? 100000 : cfg.trials;
    const double tau = get_param(cfg, "tau", 1.0);
    const double d_min = get_param(cfg, "deadline_min", 1.0);
    const double d_max = get_param(cfg, "deadline_max", 100.0);
    const double d_step = get_param(cfg, "deadline_step", 1.0);
    if (d_step <= 0.0 || d_max < d_min) throw std::invalid_argument("fig2: bad deadline grid");

    const std::vector<double> clocks = {1.0, 10.0, 10.0, 40.0};
    const double mean_delay = 10.0;
    std::vector<WorkerProfile> profiles;
    for (double c : clocks) profiles.push_back({c, mean_delay, 1.0});

    const std::size_t l_total = 100;
    const std::size_t l1 = balance_columns(
        l_total, [&](std::size_t c) { return two_group_max_ratio(c, l_total, clocks); });
    const double la = static_cast<double>(l1);
    const double lb = static_cast<double>(l_total - l1);

    // Case 1: no partitioning, everyone multiplies a full row (tau * L cycles).
    // Cases 2 and 3 differ only in radio use, so they share one sample set.
    const std::vector<double> loads_case1(4, tau * static_cast<double>(l_total));
    const std::vector<double> loads_balanced = {tau * la, tau * lb, tau * 3.0 * la,
                                                tau * 3.0 * lb};

    // Common random numbers: one sample set per case serves every deadline.
    std::vector<std::vector<double>> samples;
    {
        RngStream rng1(cfg.seed, 0);
        samples.push_back(completion_time_samples(loads_case1, profiles, trials, rng1));
        RngStream rng2(cfg.seed, 1);
        samples.push_back(completion_time_samples(loads_balanced, profiles, trials, rng2));
        samples.push_back(samples.back());
    }

    std::vector<ResultRow> rows;
    const auto d_steps = static_cast<std::size_t>(std::floor((d_max - d_min) / d_step + 1e-9));
    for (std::size_t i = 0; i <= d_steps; ++i) {
        const double d = d_min + static_cast<double>(i) * d_step;
        for (std::size_t c = 0; c < samples.size(); ++c) {
            const auto over = std::count_if(samples[c].begin(), samples[c].end(),
                                            [d](double t) { return t > d; });
            const double p = static_cast<double>(over) / static_cast<double>(trials);
            const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
            rows.push_back({cfg.scenario, "deadline", d,
                            "outage_case" + std::to_string(c + 1), p, se, trials});
        }
    }
    return rows;
}

std::vector<ResultRow> scenario_fig3(const ExperimentConfig& cfg) {
    const double psi = 1.0;
    double p_bar = 2.0;
    if (const auto it = cfg.params.find("P_dB"); it != cfg.params.end())
        p_bar = db_to_linear(it->second);
    const double energy = 5.0;
    const double lo = get_param(cfg, "h_sq_min", 0.002);
    const double hi = get_param(cfg, "h_sq_max", 0.1);
    const double step = get_param(cfg, "h_sq_step", 0.002);
    if (step <= 0.0 || hi < lo) throw std::invalid_argument("fig3: bad |h|^2 grid");

    std::vector<ResultRow> rows;
    const auto n_steps = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double h_sq = lo + static_cast<double>(i) * step;
        const cdouble h{std::sqrt(h_sq), 0.0};
        const CompensationResult comp = compensate(h, psi, energy, p_bar);
        rows.push_back(analytic_row(cfg.scenario, "h_sq", h_sq, "individual_mse",
                                    comp.individual_mse / energy));
        rows.push_back(analytic_row(cfg.scenario, "h_sq", h_sq, "theorem1_bound",
                                    mse_bound_theorem1(psi, h_sq, p_bar)));
    }
    return rows;
}

std::vector<ResultRow> scenario_fig4(const ExperimentConfig& cfg) {
    const std::size_t trials = nmse_trials(cfg);
    const auto k = static_cast<std::size_t>(get_param(cfg, "K", 10));
    const auto l = static_cast<std::size_t>(get_param(cfg, "L", 10));
    const auto m_k = static_cast<std::size_t>(get_param(cfg, "M_k", 10));
    const auto q_l = static_cast<std::size_t>(get_param(cfg, "Q_l", 10));
    const auto n_k = static_cast<std::size_t>(get_param(cfg, "N_k", 3.0 * static_cast<double>(m_k)));
    const double sigma_h_sq = get_param(cfg, "sigma_h_sq", 1.0);
    const double n0 = get_param(cfg, "N_0", 1.0);
    const double db_lo = get_param(cfg, "P_dB_min", 0.0);
    const double db_hi = get_param(cfg, "P_dB_max", 30.0);
    const double db_step = get_param(cfg, "P_dB_step", 3.0);
    if (db_step <= 0.0 || db_hi < db_lo) throw std::invalid_argument("fig4: bad power grid");

    const PartitionSpec part = uniform_partition(k * m_k, l * q_l, k, l);
    const auto sigma = default_sigma_sq(part);

    RngStream code_rng(cfg.seed, kCodeStreamBase);
    const std::vector<CodingScheme> coded =
        replicate_code(make_random_code(m_k, n_k, code_rng), part);
    const std::vector<CodingScheme> uncoded;

    std::vector<ResultRow> rows;
    const auto n_steps = static_cast<std::size_t>(std::floor((db_hi - db_lo) / db_step + 1e-9));
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double db = db_lo + static_cast<double>(i) * db_step;
        const double p_bar = db_to_linear(db);
        const ChannelParams ch{sigma_h_sq, n0, p_bar};
        if (!cfg.analytic_only) {
            const RoundConfig rc_u = make_round_config(part, uncoded, sigma_h_sq, n0, p_bar);
            rows.push_back(sim_row(cfg.scenario, "P_dB", db, "nmse_sim",
                                   estimate_nmse(rc_u, trials, cfg.seed)));
            const RoundConfig rc_c = make_round_config(part, coded, sigma_h_sq, n0, p_bar);
            rows.push_back(sim_row(cfg.scenario, "P_dB", db, "nmse_sim_coded",
                                   estimate_nmse(rc_c, trials, cfg.seed)));
        }
        rows.push_back(analytic_row(cfg.scenario, "P_dB", db, "bound1",
                                    mean_mse_bound1(part, sigma, ch, p_bar, true)));
        rows.push_back(analytic_row(cfg.scenario, "P_dB", db, "bound2",
                                    mean_mse_bound2(part, sigma, ch, p_bar, 1000, true)));
    }
    return rows;
}

// Shared driver for the L-sweep (fig5) and K-sweep (fig6).
std::vector<ResultRow> scenario_grid_sweep(const ExperimentConfig& cfg, bool sweep_l) {
    const std::size_t trials = nmse_trials(cfg);
    const double snr_db = get_param(cfg, "SNR_dB", 30.0);
    const double sigma_h_sq = get_param(cfg, "sigma_h_sq", 1.0);
    const double n0 = get_param(cfg, "N_0", 1.0);
    const double p_bar = db_to_linear(snr_db) * n0 / sigma_h_sq;

    std::vector<ResultRow> rows;
    std::size_t point = 0;
    for (std::size_t v = 4; v <= 256; v *= 2, ++point) {
        PartitionSpec part;
        std::size_t m_k;
        if (sweep_l) {
            const auto k = static_cast<std::size_t>(get_param(cfg, "K", 10));
            m_k = static_cast<std::size_t>(get_param(cfg, "M_k", 10));
            part = uniform_partition(k * m_k, 256, k, v);  // Q_l * L = 256 fixed
        } else {
            const auto l = static_cast<std::size_t>(get_param(cfg, "L", 10));
            const auto q_l = static_cast<std::size_t>(get_param(cfg, "Q_l", 10));
            m_k = 256 / v;  // K * M_k = 256 fixed
            part = uniform_partition(256, l * q_l, v, l);
        }
        const std::string sweep_name = sweep_l ? "L" : "K";
        const auto sweep_value = static_cast<double>(v);

        if (!cfg.analytic_only) {
            const RoundConfig rc_u =
                make_round_config(part, {}, sigma_h_sq, n0, p_bar);
            rows.push_back(sim_row(cfg.scenario, sweep_name, sweep_value, "nmse_sim",
                                   estimate_nmse(rc_u, trials, cfg.seed)));
            RngStream code_rng(cfg.seed, kCodeStreamBase + point);
            const auto coded = replicate_code(make_random_code(m_k, 3 * m_k, code_rng), part);
            const RoundConfig rc_c = make_round_config(part, coded, sigma_h_sq, n0, p_bar);
            rows.push_back(sim_row(cfg.scenario, sweep_name, sweep_value, "nmse_sim_coded",
                                   estimate_nmse(rc_c, trials, cfg.seed)));
        }
        const ChannelParams ch{sigma_h_sq, n0, p_bar};
        rows.push_back(analytic_row(cfg.scenario, sweep_name, sweep_value, "bound1",
                                    mean_mse_bound1(part, default_sigma_sq(part), ch, p_bar, true)));
    }
    return rows;
}

std::vector<ResultRow> scenario_fig8(const ExperimentConfig& cfg) {
    const std::size_t trials = cfg.analytic_only ? 0 : nmse_trials(cfg);
    const auto k = static_cast<std::size_t>(get_param(cfg, "K", 10));
    const auto l = static_cast<std::size_t>(get_param(cfg, "L", 10));
    const auto m_k = static_cast<std::size_t>(get_param(cfg, "M_k", 10));
    const auto q_l = static_cast<std::size_t>(get_param(cfg, "Q_l", 10));
    const double sigma_h_sq = get_param(cfg, "sigma_h_sq", 1.0);
    const double n0 = get_param(cfg, "N_0", 1.0);
    const double p_err_target = get_param(cfg, "p_err_target", 1e-2);
    const PartitionSpec part = uniform_partition(k * m_k, l * q_l, k, l);
    const double sigma_sq = static_cast<double>(q_l);

    const std::vector<double> snr_dbs = {20.0, 30.0};
    const std::vector<double> alphas = {1.0, 0.75, 0.5};
    const std::vector<std::size_t> denominators = {1, 2, 3, 4};  // r = 1/denominator

    std::vector<ResultRow> rows;
    std::size_t point = 0;
    for (std::size_t den : denominators) {
        const double r = 1.0 / static_cast<double>(den);
        const std::size_t n_k = m_k * den;
        for (double snr_db : snr_dbs) {
            const double p_bar = db_to_linear(snr_db) * n0 / sigma_h_sq;
            const std::string tag = "_snr" + std::to_string(static_cast<int>(snr_db));
            if (!cfg.analytic_only) {
                RngStream code_rng(cfg.seed, kCodeStreamBase + point);
                const std::vector<CodingScheme> codes =
                    den == 1 ? std::vector<CodingScheme>{}
                             : replicate_code(make_random_code(m_k, n_k, code_rng), part);
                const RoundConfig rc = make_round_config(part, codes, sigma_h_sq, n0, p_bar);
                rows.push_back(sim_row(cfg.scenario, "r", r, "nmse_sim_coded" + tag,
                                       estimate_nmse(rc, trials, cfg.seed)));
            }
            rows.push_back(analytic_row(cfg.scenario, "r", r, "asymptote" + tag,
                                        beta_asymptote(n_k, m_k, sigma_sq, sigma_h_sq, p_bar)));
            for (double alpha : alphas) {
                CmParams cm;
                cm.snr = db_to_linear(snr_db);
                cm.alpha = alpha;
                cm.j_needed = k * l;
                cm.p_err_target = p_err_target;
                char metric[64];
                std::snprintf(metric, sizeof(metric), "cm_nmse_a%.2f%s", alpha, tag.c_str());
                rows.push_back(analytic_row(cfg.scenario, "r", r, metric, cm_nmse(r, cm)));
            }
            ++point;
        }
    }
    return rows;
}

std::vector<ResultRow> scenario_custom(const ExperimentConfig& cfg) {
    const std::size_t trials = nmse_trials(cfg);
    const auto k = static_cast<std::size_t>(get_param(cfg, "K", 10));
    const auto l = static_cast<std::size_t>(get_param(cfg, "L", 10));
    const auto m_k = static_cast<std::size_t>(get_param(cfg, "M_k", 10));
    const auto q_l = static_cast<std::size_t>(get_param(cfg, "Q_l", 10));
    const auto n_k = static_cast<std::size_t>(get_param(cfg, "N_k", 0.0));
    const double sigma_h_sq = get_param(cfg, "sigma_h_sq", 1.0);
    const double n0 = get_param(cfg, "N_0", 1.0);
    const double db_lo = get_param(cfg, "P_dB_min", 0.0);
    const double db_hi = get_param(cfg, "P_dB_max", 30.0);
    const double db_step = get_param(cfg, "P_dB_step", 5.0);
    if (db_step <= 0.0 || db_hi < db_lo) throw std::invalid_argument("custom: bad power grid");
    if (n_k != 0 && n_k < m_k) throw std::invalid_argument("custom: N_k must be 0 or >= M_k");

    const PartitionSpec part = uniform_partition(k * m_k, l * q_l, k, l);
    const auto sigma = default_sigma_sq(part);
    std::vector<CodingScheme> codes;
    std::string sim_metric = "nmse_sim";
    if (n_k > m_k) {
        RngStream code_rng(cfg.seed, kCodeStreamBase);
        codes = replicate_code(make_random_code(m_k, n_k, code_rng), part);
        sim_metric = "nmse_sim_coded";
    }

    std::vector<ResultRow> rows;
    const auto n_steps = static_cast<std::size_t>(std::floor((db_hi - db_lo) / db_step + 1e-9));
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double db = db_lo + static_cast<double>(i) * db_step;
        const double p_bar = db_to_linear(db);
        if (!cfg.analytic_only) {
            const RoundConfig rc = make_round_config(part, codes, sigma_h_sq, n0, p_bar);
            rows.push_back(sim_row(cfg.scenario, "P_dB", db, sim_metric,
                                   estimate_nmse(rc, trials, cfg.seed)));
        }
        const ChannelParams ch{sigma_h_sq, n0, p_bar};
        rows.push_back(analytic_row(cfg.scenario, "P_dB", db, "bound1",
                                    mean_mse_bound1(part, sigma, ch, p_bar, true)));
        rows.push_back(analytic_row(cfg.scenario, "P_dB", db, "bound2",
                                    mean_mse_bound2(part, sigma, ch, p_bar, 1000, true)));
    }
    return rows;
}

}  // namespace

void set_param(ExperimentConfig& cfg, const std::string& key, double value) {
    if (!param_vocabulary().count(key))
        throw std::invalid_argument("unknown parameter: " + key);
    cfg.params[key] = value;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "scenario") {
            cfg.scenario = value;
        } else if (key == "trials") {
            cfg.trials = std::stoull(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "analytic_only") {
            cfg.analytic_only = (value == "1" || value == "true");
        } else {
            set_param(cfg, key, std::stod(value));
        }
    }
    return cfg;
}

std::vector<ResultRow> run_scenario(const ExperimentConfig& cfg) {
    if (cfg.scenario == "fig2") return scenario_fig2(cfg);
    if (cfg.scenario == "fig3") return scenario_fig3(cfg);
    if (cfg.scenario == "fig4") return scenario_fig4(cfg);
    if (cfg.scenario == "fig5") return scenario_grid_sweep(cfg, true);
    if (cfg.scenario == "fig6") return scenario_grid_sweep(cfg, false);
    if (cfg.scenario == "fig8") return scenario_fig8(cfg);
    if (cfg.scenario == "custom") return scenario_custom(cfg);
    throw std::invalid_argument("unknown scenario: " + cfg.scenario);
}

std::string format_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "scenario,sweep_param,sweep_value,metric,value,std_error,trials\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", r.sweep_value);
        out << r.scenario << ',' << r.sweep_param << ',' << buf << ',' << r.metric << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", r.value);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", r.std_error);
        out << buf << ',' << r.trials << '\n';
    }
    return out.str();
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << format_csv(rows);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ota
