#pragma once

#include <cstddef>
#include <vector>

#include "ota/channel.hpp"
#include "ota/partition.hpp"

namespace ota {

// Individual outage probability rho_n(s) = 1 - prod_{i=1..n} i / (s + i):
// the chance that a worker with an n-length outcome cannot fully invert its
// fading channel at the given normalized load s = sigma^2 / (sigma_h^2 Pbar).
double rho(std::size_t n, double s);

// Per-worker outcome variances sigma_{k,l}^2 = Q_l under unit-variance data,
// row-major over the K x L grid.
std::vector<double> default_sigma_sq(const PartitionSpec& partition);

// Mean-MSE upper bound built from the individual outage probabilities:
// sum_{k,l} M_k sigma_{k,l}^2 rho_{M_k}(s_{k,l}) + (N_0 / P_rx) M.
// `normalized` divides by the reference energy sum_{k,l} M_k sigma_{k,l}^2.
double mean_mse_bound1(const PartitionSpec& partition, const std::vector<double>& sigma_sq,
                       const ChannelParams& channel, double max_power, bool normalized = false);

// Per-worker term of the tighter bound at normalized load s, minimized over
// an explicit z grid (z = 1 alone reproduces rho(m_k, s)).
double clipped_outage_term(std::size_t m_k, double s, const std::vector<double>& z_grid);

// Tighter bound: the per-worker outage term is replaced by
// min_{z in [1/25, 1]} (1/4)(sqrt(1/z) - 1) + ((5 - sqrt(1/z))/4) rho_{M_k}(z s),
// minimized over a log-spaced grid of z_grid_size points.
double mean_mse_bound2(const PartitionSpec& partition, const std::vector<double>& sigma_sq,
                       const ChannelParams& channel, double max_power,
                       std::size_t z_grid_size = 1000, bool normalized = false);

// Outage of a coded worker: rho_{n_k}(r_k sigma^2 / (sigma_h^2 Pbar)) with
// r_k = m_k / n_k.
double coded_outage(std::size_t n_k, std::size_t m_k, double sigma_sq, double sigma_h_sq,
                    double max_power);

// Large-n exponent beta(n) = s (ln n + euler_gamma) with
// s = (m_k / n_k) sigma^2 / (sigma_h^2 Pbar); 1 - exp(-beta) approximates the
// coded outage and beta itself is the asymptotic normalized MSE level.
double beta_asymptote(std::size_t n_k, std::size_t m_k, double sigma_sq, double sigma_h_sq,
                      double max_power);

// Digital coded-multiplication baseline -------------------------------------

struct CmParams {
    double snr = 1.0;           // linear average receive SNR
    double alpha = 1.0;         // coding efficiency in (0, 1]
    std::size_t j_needed = 1;   // J workers required for recovery
    std::size_t j_total = 1;    // Jbar >= J workers deployed
    double p_err_target = 1e-2;
};

// Information outage of one digital link at rate eta:
// 1 - exp(-(2^eta - 1) / snr).
double cm_outage(double eta, double snr);

// Exact binomial tail Pr(more than Jbar - J links in outage).
double cm_decoding_error(double p_out, std::size_t j_needed, std::size_t j_total);

// Chernoff bound exp(-Jbar KL(J/Jbar || 1 - p_out)); returns 1 outside the
// applicability region J/Jbar < 1 - p_out.
double cm_chernoff_bound(double p_out, std::size_t j_needed, std::size_t j_total);

// Largest per-link outage whose decoding error stays within p_err_target
// (bisection; cm_decoding_error is monotone increasing in p_out).
double cm_max_outage(std::size_t j_needed, std::size_t j_total, double p_err_target);

// Normalized distortion 2^{-alpha eta} of the CM baseline at system code rate
// `code_rate` = J / Jbar: the largest per-link outage meeting the decoding
// error target is found by bisection, then inverted into a link rate.
double cm_nmse(double code_rate, const CmParams& cm);

}  // namespace ota
