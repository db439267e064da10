#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ota/rng.hpp"

namespace ota {

// K x L grid of submatrix dimensions assigning work to workers: worker (k,l)
// multiplies the M_k x Q_l block A_{k,l} by the subvector x_l.
struct PartitionSpec {
    std::vector<std::size_t> row_sizes;  // M_1..M_K
    std::vector<std::size_t> col_sizes;  // Q_1..Q_L

    std::size_t groups() const { return row_sizes.size(); }           // K
    std::size_t workers_per_group() const { return col_sizes.size(); }  // L
    std::size_t total_rows() const;                                    // M
    std::size_t total_cols() const;                                    // Q
};

struct WorkerProfile {
    double clock_speed = 1.0;      // CPU cycles per unit time
    double setup_delay_mean = 0.0; // mean of the exponential setup/processing delay
    double max_power = 1.0;
};

// Equal-size grid; throws std::invalid_argument unless K | M and L | Q.
PartitionSpec uniform_partition(std::size_t m, std::size_t q, std::size_t k, std::size_t l);

// Integer column split minimizing a caller-supplied max load ratio over
// L1 in [1, L-1]; ties break toward the smaller L1.
std::size_t balance_columns(std::size_t l_total,
                            const std::function<double(std::size_t)>& max_load_ratio);

// The two-column-group load profile: four workers with row multipliers
// (1, 1, 3, 3) and loads (L1/c1, L2/c2, 3*L1/c3, 3*L2/c4), L2 = L - L1.
double two_group_max_ratio(std::size_t l1, std::size_t l_total,
                           const std::vector<double>& clocks);

// Per-trial samples of the slowest completion time max_k (G_k/c_k + Z_k),
// with Z_k exponential of mean profiles[k].setup_delay_mean. Shared samples
// let one draw serve a whole deadline sweep (common random numbers).
std::vector<double> completion_time_samples(const std::vector<double>& loads,
                                            const std::vector<WorkerProfile>& profiles,
                                            std::size_t trials, RngStream& rng);

// Monte-Carlo Pr(max_k T_k > deadline).
double completion_outage(const std::vector<double>& loads,
                         const std::vector<WorkerProfile>& profiles, double deadline,
                         std::size_t trials, RngStream& rng);

}  // namespace ota
