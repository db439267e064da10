#include "ota/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ota {

std::vector<CodingScheme> replicate_code(const CodingScheme& scheme, const PartitionSpec& p) {
    for (std::size_t mk : p.row_sizes) {
        if (mk != scheme.m)
            throw std::invalid_argument("replicate_code: scheme length does not match row sizes");
    }
    return std::vector<CodingScheme>(p.groups(), scheme);
}

RoundResult simulate_round(const RoundConfig& cfg, RngStream& rng) {
    const auto& part = cfg.partition;
    const std::size_t k_groups = part.groups();
    const std::size_t l_workers = part.workers_per_group();
    if (k_groups == 0 || l_workers == 0)
        throw std::invalid_argument("simulate_round: empty partition");

    std::vector<CodingScheme> identity_codes;
    const std::vector<CodingScheme>* codes = &cfg.codes;
    if (cfg.codes.empty()) {
        identity_codes.reserve(k_groups);
        for (std::size_t mk : part.row_sizes) identity_codes.push_back(make_identity_code(mk));
        codes = &identity_codes;
    }
    if (codes->size() != k_groups)
        throw std::invalid_argument("simulate_round: need one coding scheme per slot group");
    for (std::size_t k = 0; k < k_groups; ++k) {
        if ((*codes)[k].m != part.row_sizes[k])
            throw std::invalid_argument("simulate_round: scheme length inconsistent with partition");
    }

    const std::size_t m_total = part.total_rows();
    const std::size_t q_total = part.total_cols();
    const double sqrt_prx = std::sqrt(cfg.channel.rx_power);

    RoundResult res;
    ComplexMatrix a_local;
    const ComplexMatrix* a = cfg.pinned_a ? cfg.pinned_a.get() : &a_local;
    if (!cfg.pinned_a) a_local = sample_cscg_matrix(rng, m_total, q_total, 1.0);
    const ComplexMatrix x = sample_cscg_matrix(rng, q_total, 1, 1.0);

    res.y_true = matmul(*a, x);
    res.y_hat = ComplexMatrix::zero(m_total, 1);

    std::size_t row0 = 0;
    for (std::size_t k = 0; k < k_groups; ++k) {
        const CodingScheme& code = (*codes)[k];
        const std::size_t mk = part.row_sizes[k];
        const std::size_t seg_len = code.segment_length();
        ComplexMatrix z(code.n, 1);

        std::size_t col0 = 0;
        for (std::size_t l = 0; l < l_workers; ++l) {
            const std::size_t ql = part.col_sizes[l];
            const ComplexMatrix a_kl = a->block(row0, col0, mk, ql);
            const ComplexMatrix x_l = x.block(col0, 0, ql, 1);
            const ComplexMatrix y_tilde = encode(code, matmul(a_kl, x_l));
            const double energy = static_cast<double>(mk) * static_cast<double>(ql);

            for (std::size_t seg = 0; seg < code.segments; ++seg) {
                const std::size_t off = seg * seg_len;
                double psi = 0.0;
                for (std::size_t i = 0; i < seg_len; ++i)
                    psi = std::max(psi, std::norm(y_tilde(off + i, 0)));

                cdouble h = rng.cscg(cfg.channel.sigma_h_sq);
                if (cfg.h_override) {
                    if (auto forced = cfg.h_override(k, l, seg)) h = *forced;
                }
                const CompensationResult comp = compensate(h, psi, energy, cfg.max_power);
                const cdouble scale = sqrt_prx * h * comp.g_hat;
                for (std::size_t i = 0; i < seg_len; ++i)
                    z(off + i, 0) += scale * y_tilde(off + i, 0);
                res.per_worker.push_back(comp);
            }
            res.reference_energy += energy;
            col0 += ql;
        }

        for (std::size_t i = 0; i < code.n; ++i) z(i, 0) += rng.cscg(cfg.channel.noise_psd);

        const ComplexMatrix y_hat_k = decode(code, z);
        for (std::size_t i = 0; i < mk; ++i) res.y_hat(row0 + i, 0) = y_hat_k(i, 0) / sqrt_prx;
        row0 += mk;
    }

    double err = 0.0;
    for (std::size_t i = 0; i < m_total; ++i)
        err += std::norm(res.y_hat(i, 0) - res.y_true(i, 0));
    res.squared_error = err;
    return res;
}

NmseEstimate estimate_nmse(const RoundConfig& cfg, std::size_t trials, std::uint64_t seed,
                           unsigned threads) {
    if (trials < 2) throw std::invalid_argument("estimate_nmse: need trials >= 2");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));

    std::vector<double> values(trials);
    auto worker = [&](std::size_t first, std::size_t last) {
        for (std::size_t t = first; t < last; ++t) {
            RngStream rng(seed, t);
            const RoundResult r = simulate_round(cfg, rng);
            values[t] = r.squared_error / r.reference_energy;
        }
    };
    if (threads <= 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (trials + threads - 1) / threads;
        for (unsigned i = 0; i < threads; ++i) {
            const std::size_t first = i * chunk;
            if (first >= trials) break;
            pool.emplace_back(worker, first, std::min(trials, first + chunk));
        }
        for (auto& th : pool) th.join();
    }

    // Kahan-compensated sums so the reduction is order-independent by
    // construction (values are accumulated in trial order).
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double mean = sum / static_cast<double>(trials);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(trials - 1);

    NmseEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(var / static_cast<double>(trials));
    est.trials = trials;
    return est;
}

}  // namespace ota
