#include "ota/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ota {
namespace {

double reference_energy(const PartitionSpec& p, const std::vector<double>& sigma_sq) {
    double e = 0.0;
    std::size_t idx = 0;
    for (std::size_t mk : p.row_sizes)
        for (std::size_t l = 0; l < p.workers_per_group(); ++l)
            e += static_cast<double>(mk) * sigma_sq[idx++];
    return e;
}

void check_sigma(const PartitionSpec& p, const std::vector<double>& sigma_sq) {
    if (sigma_sq.size() != p.groups() * p.workers_per_group())
        throw std::invalid_argument("expected one sigma^2 per worker (K*L, row-major)");
}

// KL(a || b) for Bernoulli parameters with the 0 log 0 = 0 convention.
double bernoulli_kl(double a, double b) {
    double kl = 0.0;
    if (a > 0.0) kl += a * std::log(a / b);
    if (a < 1.0) kl += (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
    return kl;
}

}  // namespace

double rho(std::size_t n, double s) {
    if (n < 1) throw std::invalid_argument("rho: n must be >= 1");
    if (s < 0.0) throw std::invalid_argument("rho: s must be nonnegative");
    double prod = 1.0;
    for (std::size_t i = 1; i <= n; ++i)
        prod *= static_cast<double>(i) / (s + static_cast<double>(i));
    return 1.0 - prod;
}

std::vector<double> default_sigma_sq(const PartitionSpec& partition) {
    std::vector<double> out;
    out.reserve(partition.groups() * partition.workers_per_group());
    for (std::size_t k = 0; k < partition.groups(); ++k)
        for (std::size_t ql : partition.col_sizes) out.push_back(static_cast<double>(ql));
    return out;
}

double mean_mse_bound1(const PartitionSpec& partition, const std::vector<double>& sigma_sq,
                       const ChannelParams& channel, double max_power, bool normalized) {
    check_sigma(partition, sigma_sq);
    double total = 0.0;
    std::size_t idx = 0;
    for (std::size_t mk : partition.row_sizes) {
        for (std::size_t l = 0; l < partition.workers_per_group(); ++l) {
            const double s2 = sigma_sq[idx++];
            const double s = s2 / (channel.sigma_h_sq * max_power);
            total += static_cast<double>(mk) * s2 * rho(mk, s);
        }
    }
    total += channel.noise_psd / channel.rx_power * static_cast<double>(partition.total_rows());
    return normalized ? total / reference_energy(partition, sigma_sq) : total;
}

double clipped_outage_term(std::size_t m_k, double s, const std::vector<double>& z_grid) {
    double best = 1.0;
    for (double z : z_grid) {
        const double root = std::sqrt(1.0 / z);
        const double val = 0.25 * (root - 1.0) + (5.0 - root) / 4.0 * rho(m_k, z * s);
        best = std::min(best, val);
    }
    return best;
}

double mean_mse_bound2(const PartitionSpec& partition, const std::vector<double>& sigma_sq,
                       const ChannelParams& channel, double max_power,
                       std::size_t z_grid_size, bool normalized) {
    check_sigma(partition, sigma_sq);
    if (z_grid_size < 2) throw std::invalid_argument("mean_mse_bound2: need z_grid_size >= 2");

    // Log-spaced grid on [1/25, 1], endpoints included.
    std::vector<double> z_grid(z_grid_size);
    const double log_lo = std::log(1.0 / 25.0);
    for (std::size_t i = 0; i < z_grid_size; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(z_grid_size - 1);
        z_grid[i] = std::exp(log_lo * (1.0 - t));
    }

    double total = 0.0;
    std::size_t idx = 0;
    for (std::size_t mk : partition.row_sizes) {
        for (std::size_t l = 0; l < partition.workers_per_group(); ++l) {
            const double s2 = sigma_sq[idx++];
            const double s = s2 / (channel.sigma_h_sq * max_power);
            total += static_cast<double>(mk) * s2 * clipped_outage_term(mk, s, z_grid);
        }
    }
    total += channel.noise_psd / channel.rx_power * static_cast<double>(partition.total_rows());
    return normalized ? total / reference_energy(partition, sigma_sq) : total;
}

double coded_outage(std::size_t n_k, std::size_t m_k, double sigma_sq, double sigma_h_sq,
                    double max_power) {
    if (n_k < m_k || m_k < 1) throw std::invalid_argument("coded_outage: need n >= m >= 1");
    const double r = static_cast<double>(m_k) / static_cast<double>(n_k);
    return rho(n_k, r * sigma_sq / (sigma_h_sq * max_power));
}

double beta_asymptote(std::size_t n_k, std::size_t m_k, double sigma_sq, double sigma_h_sq,
                      double max_power) {
    if (n_k < 1) throw std::invalid_argument("beta_asymptote: n must be >= 1");
    const double r = static_cast<double>(m_k) / static_cast<double>(n_k);
    const double s = r * sigma_sq / (sigma_h_sq * max_power);
    return s * (std::log(static_cast<double>(n_k)) + std::numbers::egamma);
}

double cm_outage(double eta, double snr) {
    if (eta < 0.0 || snr <= 0.0) throw std::invalid_argument("cm_outage: bad parameters");
    return 1.0 - std::exp(-(std::exp2(eta) - 1.0) / snr);
}

double cm_decoding_error(double p_out, std::size_t j_needed, std::size_t j_total) {
    if (p_out < 0.0 || p_out > 1.0)
        throw std::invalid_argument("cm_decoding_error: p_out out of [0,1]");
    if (j_total < j_needed)
        throw std::invalid_argument("cm_decoding_error: j_total < j_needed");
    if (p_out == 0.0) return 0.0;
    if (p_out == 1.0) return 1.0;

    // Binomial tail over n = Jbar - J + 1 .. Jbar, log-gamma terms so that
    // Jbar up to ~10^4 stays accurate.
    const double jbar = static_cast<double>(j_total);
    const double lp = std::log(p_out);
    const double lq = std::log1p(-p_out);
    const double lg_total = std::lgamma(jbar + 1.0);
    double sum = 0.0;
    for (std::size_t n = j_total - j_needed + 1; n <= j_total; ++n) {
        const double nn = static_cast<double>(n);
        const double log_term = lg_total - std::lgamma(nn + 1.0) - std::lgamma(jbar - nn + 1.0) +
                                nn * lp + (jbar - nn) * lq;
        sum += std::exp(log_term);
    }
    return std::min(1.0, sum);
}

double cm_chernoff_bound(double p_out, std::size_t j_needed, std::size_t j_total) {
    if (j_total < j_needed || j_needed == 0)
        throw std::invalid_argument("cm_chernoff_bound: bad worker counts");
    const double r_hat = static_cast<double>(j_needed) / static_cast<double>(j_total);
    if (p_out <= 0.0) return 0.0;  // limit KL(r_hat || 1) -> infinity
    if (r_hat >= 1.0 - p_out) return 1.0;  // vacuous outside the applicability region
    return std::exp(-static_cast<double>(j_total) * bernoulli_kl(r_hat, 1.0 - p_out));
}

double cm_max_outage(std::size_t j_needed, std::size_t j_total, double p_err_target) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cm_decoding_error(mid, j_needed, j_total) <= p_err_target)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double cm_nmse(double code_rate, const CmParams& cm) {
    if (code_rate <= 0.0 || code_rate > 1.0)
        throw std::invalid_argument("cm_nmse: code_rate out of (0,1]");
    if (cm.alpha <= 0.0 || cm.alpha > 1.0)
        throw std::invalid_argument("cm_nmse: alpha out of (0,1]");
    const auto j_total = static_cast<std::size_t>(
        std::llround(static_cast<double>(cm.j_needed) / code_rate));

    const double p_out = cm_max_outage(cm.j_needed, j_total, cm.p_err_target);
    if (p_out <= 0.0) return 1.0;  // infeasible: the quantizer sends zero bits

    const double eta = std::log2(1.0 - cm.snr * std::log1p(-p_out));
    return std::exp2(-cm.alpha * eta);
}

}  // namespace ota
