#pragma once

#include <vector>

#include "ota/rng.hpp"

namespace ota {

struct ChannelParams {
    double sigma_h_sq = 1.0;  // mean channel power gain
    double noise_psd = 0.0;   // N_0
    double rx_power = 1.0;    // desired received power P_rx
};

// Outcome of one worker's power-constrained channel compensation.
// When the peak-power constraint is inactive the worker inverts the channel
// exactly (effective_gain 1, zero individual MSE). When it binds, the
// coefficient sits on the power boundary and the residual misalignment is
// (1 - effective_gain)^2 * energy.
struct CompensationResult {
    cdouble g_hat{};
    double lagrange = 0.0;
    bool clamped = false;
    double tx_power = 0.0;        // |g_hat|^2 * psi
    double effective_gain = 0.0;  // h * g_hat, real at the optimum
    double individual_mse = 0.0;
};

// iid complex Gaussian gains, zero mean, variance sigma_h_sq (Rayleigh
// amplitude, exponential power).
std::vector<cdouble> sample_rayleigh_gains(RngStream& rng, std::size_t count,
                                           double sigma_h_sq);

// Largest squared entry modulus of a column vector.
double peak_power(const ComplexMatrix& y_col);

// Closed-form minimizer of |1 - h g|^2 * energy subject to |g|^2 psi <= max_power.
// A zero channel returns a silent worker (g = 0, full energy lost).
CompensationResult compensate(cdouble h, double psi, double energy, double max_power);

// Upper bound on the normalized individual MSE:
// min{1, (1/4) (sqrt(psi / (gain_sq * max_power)) - 1)^+ }.
double mse_bound_theorem1(double psi, double gain_sq, double max_power);

}  // namespace ota
