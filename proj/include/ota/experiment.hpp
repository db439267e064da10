#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ota {

// One emitted data point. Analytic metrics carry std_error = 0 and trials = 0;
// simulated metrics carry the Monte-Carlo standard error and trial count.
struct ResultRow {
    std::string scenario;
    std::string sweep_param;
    double sweep_value = 0.0;
    std::string metric;
    double value = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

struct ExperimentConfig {
    std::string scenario;       // fig2 | fig3 | fig4 | fig5 | fig6 | fig8 | custom
    std::size_t trials = 0;     // 0 selects the scenario default
    std::uint64_t seed = 1;
    bool analytic_only = false;
    std::map<std::string, double> params;  // validated overrides, see set_param
};

// Sets a parameter override; throws std::invalid_argument for keys outside
// the declared vocabulary (K, L, M_k, Q_l, N_k, sigma_h_sq, N_0, P_dB,
// SNR_dB, alpha, p_err_target, tau, deadline_min/max/step, h_sq_min/max/step,
// P_dB_min/max/step).
void set_param(ExperimentConfig& cfg, const std::string& key, double value);

// Reads a flat key=value config file ('#' comments, blank lines allowed).
// Recognized top-level keys: scenario, trials, seed, analytic_only; all other
// keys go through set_param.
ExperimentConfig parse_config_file(const std::string& path);

// Produces every metric row of the scenario in deterministic order
// (sweep-major, metric-minor). Throws on unknown scenarios or inconsistent
// parameter combinations.
std::vector<ResultRow> run_scenario(const ExperimentConfig& cfg);

// UTF-8 CSV with header scenario,sweep_param,sweep_value,metric,value,
// std_error,trials; numbers at 17 significant digits. Byte-identical across
// reruns of the same rows.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

std::string format_csv(const std::vector<ResultRow>& rows);

}  // namespace ota
