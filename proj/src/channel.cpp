#include "ota/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ota {

std::vector<cdouble> sample_rayleigh_gains(RngStream& rng, std::size_t count,
                                           double sigma_h_sq) {
    if (sigma_h_sq <= 0.0)
        throw std::invalid_argument("sample_rayleigh_gains: sigma_h_sq must be positive");
    std::vector<cdouble> h(count);
    for (auto& v : h) v = rng.cscg(sigma_h_sq);
    return h;
}

double peak_power(const ComplexMatrix& y_col) {
    if (y_col.cols() != 1) throw std::invalid_argument("peak_power: expected a column vector");
    if (y_col.rows() == 0) throw std::invalid_argument("peak_power: empty vector");
    double psi = 0.0;
    for (const auto& v : y_col.entries()) psi = std::max(psi, std::norm(v));
    return psi;
}

CompensationResult compensate(cdouble h, double psi, double energy, double max_power) {
    if (energy <= 0.0) throw std::invalid_argument("compensate: energy must be positive");
    if (max_power <= 0.0) throw std::invalid_argument("compensate: max_power must be positive");
    CompensationResult r;

    const double h_sq = std::norm(h);
    if (h_sq == 0.0) {
        // Limiting case |h| -> 0: the worker stays silent, its energy is lost.
        r.clamped = true;
        r.lagrange = std::numeric_limits<double>::infinity();
        r.individual_mse = energy;
        return r;
    }

    if (psi <= h_sq * max_power) {
        // Constraint inactive: exact channel inversion.
        r.g_hat = 1.0 / h;
        r.tx_power = std::norm(r.g_hat) * psi;
        r.effective_gain = 1.0;
        return r;
    }

    // Active constraint: the optimum sits on the boundary |g|^2 psi = max_power
    // with the phase of g conjugating h, so the aligned gain is
    // |h| sqrt(max_power / psi) < 1.
    const double ratio = std::sqrt(psi / (h_sq * max_power));  // > 1
    r.clamped = true;
    r.lagrange = h_sq * energy * (ratio - 1.0) / psi;
    r.g_hat = std::conj(h) / std::abs(h) * std::sqrt(max_power / psi);
    r.tx_power = max_power;
    r.effective_gain = std::abs(h) * std::sqrt(max_power / psi);
    const double miss = 1.0 - r.effective_gain;
    r.individual_mse = miss * miss * energy;
    return r;
}

double mse_bound_theorem1(double psi, double gain_sq, double max_power) {
    if (gain_sq <= 0.0) return 1.0;
    const double excess = std::sqrt(psi / (gain_sq * max_power)) - 1.0;
    return std::min(1.0, 0.25 * std::max(0.0, excess));
}

}  // namespace ota
