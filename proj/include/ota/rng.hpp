#pragma once

#include <cstdint>
#include <random>

#include "ota/matrix.hpp"

namespace ota {

// Per-stream seeded generator. Identical (seed, stream) pairs replay the same
// sample sequence no matter how many streams run concurrently, which is what
// makes Monte-Carlo trials reproducible under parallel execution (one stream
// per trial index). A single stream must not be shared across threads.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01();

    // Standard normal via Box-Muller; no cached spare, so the draw sequence
    // is a pure function of the underlying integer stream.
    double normal();

    // Exponential with the given mean (mean 0 returns 0 identically).
    double exponential(double mean);

    // Circularly symmetric complex Gaussian: mean 0, total variance
    // `variance` split evenly between real and imaginary parts.
    cdouble cscg(double variance);

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 gen_;
};

// Matrix with iid CSCG entries of the given per-entry variance.
// Throws std::invalid_argument on negative variance.
ComplexMatrix sample_cscg_matrix(RngStream& rng, std::size_t rows, std::size_t cols,
                                 double variance);

}  // namespace ota
