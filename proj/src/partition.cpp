#include "ota/partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ota {

std::size_t PartitionSpec::total_rows() const {
    return std::accumulate(row_sizes.begin(), row_sizes.end(), std::size_t{0});
}

std::size_t PartitionSpec::total_cols() const {
    return std::accumulate(col_sizes.begin(), col_sizes.end(), std::size_t{0});
}

PartitionSpec uniform_partition(std::size_t m, std::size_t q, std::size_t k, std::size_t l) {
    if (k == 0 || l == 0) throw std::invalid_argument("uniform_partition: K, L must be >= 1");
    if (m % k != 0) throw std::invalid_argument("uniform_partition: K does not divide M");
    if (q % l != 0) throw std::invalid_argument("uniform_partition: L does not divide Q");
    return {std::vector<std::size_t>(k, m / k), std::vector<std::size_t>(l, q / l)};
}

std::size_t balance_columns(std::size_t l_total,
                            const std::function<double(std::size_t)>& max_load_ratio) {
    if (l_total < 2) throw std::invalid_argument("balance_columns: need L >= 2");
    std::size_t best = 1;
    double best_ratio = max_load_ratio(1);
    for (std::size_t l1 = 2; l1 < l_total; ++l1) {
        const double r = max_load_ratio(l1);
        if (r < best_ratio) {
            best_ratio = r;
            best = l1;
        }
    }
    return best;
}

double two_group_max_ratio(std::size_t l1, std::size_t l_total,
                           const std::vector<double>& clocks) {
    if (clocks.size() != 4) throw std::invalid_argument("two_group_max_ratio: need 4 clocks");
    if (l1 == 0 || l1 >= l_total) throw std::invalid_argument("two_group_max_ratio: L1 out of range");
    const double la = static_cast<double>(l1);
    const double lb = static_cast<double>(l_total - l1);
    return std::max({la / clocks[0], lb / clocks[1], 3.0 * la / clocks[2], 3.0 * lb / clocks[3]});
}

std::vector<double> completion_time_samples(const std::vector<double>& loads,
                                            const std::vector<WorkerProfile>& profiles,
                                            std::size_t trials, RngStream& rng) {
    if (loads.size() != profiles.size())
        throw std::invalid_argument("completion_time_samples: loads/profiles size mismatch");
    if (trials < 1) throw std::invalid_argument("completion_time_samples: trials < 1");
    std::vector<double> base(loads.size());
    for (std::size_t k = 0; k < loads.size(); ++k) base[k] = loads[k] / profiles[k].clock_speed;
    std::vector<double> out(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        double worst = 0.0;
        for (std::size_t k = 0; k < loads.size(); ++k)
            worst = std::max(worst, base[k] + rng.exponential(profiles[k].setup_delay_mean));
        out[t] = worst;
    }
    return out;
}

double completion_outage(const std::vector<double>& loads,
                         const std::vector<WorkerProfile>& profiles, double deadline,
                         std::size_t trials, RngStream& rng) {
    const auto samples = completion_time_samples(loads, profiles, trials, rng);
    const auto over = std::count_if(samples.begin(), samples.end(),
                                    [deadline](double t) { return t > deadline; });
    return static_cast<double>(over) / static_cast<double>(trials);
}

}  // namespace ota
