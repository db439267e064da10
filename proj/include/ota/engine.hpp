#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ota/channel.hpp"
#include "ota/coding.hpp"
#include "ota/partition.hpp"

namespace ota {

// One superposition round over the whole worker grid.
struct RoundConfig {
    PartitionSpec partition;
    std::vector<CodingScheme> codes;  // one per slot group; empty means uncoded
    ChannelParams channel;
    double max_power = 1.0;

    // Test hook: replace the fading draw of worker (k, l), segment s. The
    // generator is still advanced so the draw sequence is unchanged.
    std::function<std::optional<cdouble>(std::size_t k, std::size_t l, std::size_t seg)>
        h_override;

    // Optional pinned data matrix for conditional studies (fresh x per trial).
    std::shared_ptr<const ComplexMatrix> pinned_a;
};

struct RoundResult {
    ComplexMatrix y_true;  // A x
    ComplexMatrix y_hat;   // platform estimate
    std::vector<CompensationResult> per_worker;  // (k, l, segment) order
    double squared_error = 0.0;
    double reference_energy = 0.0;  // sum over workers of M_k * Q_l
};

struct NmseEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

// Replicates one scheme across all K slot groups (requires equal row sizes
// when the scheme is non-trivial).
std::vector<CodingScheme> replicate_code(const CodingScheme& scheme, const PartitionSpec& p);

// One Monte-Carlo trial: draw A and x (unit-variance CSCG entries), run every
// worker through encoding, peak-power compensation and the superposed noisy
// slot, then decode and measure the squared error against A x.
RoundResult simulate_round(const RoundConfig& cfg, RngStream& rng);

// Mean of squared_error / reference_energy over `trials` independent rounds,
// trial t on stream (seed, t). Deterministic for fixed (cfg, trials, seed)
// under any thread count: per-trial values land in a preallocated slot and
// the reduction is sequential.
NmseEstimate estimate_nmse(const RoundConfig& cfg, std::size_t trials, std::uint64_t seed,
                           unsigned threads = 0);

}  // namespace ota
