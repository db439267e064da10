#pragma once

#include <cstdint>

#include "ota/rng.hpp"

namespace ota {

enum class CodeVariant { identity, repetition, random_gaussian, explicit_pair };

// Encoder/decoder pair (F, F_dagger) with F_dagger * F = I_m. The coded slot
// splits into `segments` equal pieces that see independent channel draws:
// a repetition code assigns one worker instance per copy (each copy is the
// plain outcome vector), every other variant transmits the whole n-length
// block under a single channel coefficient.
struct CodingScheme {
    CodeVariant variant = CodeVariant::identity;
    std::size_t m = 0;  // uncoded length M_k
    std::size_t n = 0;  // coded length N_k >= M_k
    std::size_t segments = 1;
    ComplexMatrix encoder;   // n x m
    ComplexMatrix decoder;   // m x n

    double code_rate() const { return static_cast<double>(m) / static_cast<double>(n); }
    std::size_t segment_length() const { return n / segments; }
};

CodingScheme make_identity_code(std::size_t m);

// factor >= 2 stacked copies of I_m; decoder averages with weight 1/factor.
CodingScheme make_repetition_code(std::size_t m, std::size_t factor);

// iid CSCG encoder entries of variance 1/n. The decoder is the exact left
// inverse (F^H F)^{-1} F^H unless hermitian_decoder is set, in which case
// F^H is used directly (the large-n approximation). A numerically singular
// draw is rejected and redrawn from the same stream.
CodingScheme make_random_code(std::size_t m, std::size_t n, RngStream& rng,
                              bool hermitian_decoder = false);

CodingScheme make_explicit_code(ComplexMatrix encoder, ComplexMatrix decoder);

// F * a_kl; a_kl must have m rows.
ComplexMatrix encode(const CodingScheme& scheme, const ComplexMatrix& a_kl);

// F_dagger * z_k; z_k must have n rows.
ComplexMatrix decode(const CodingScheme& scheme, const ComplexMatrix& z_k);

// Per-entry variance of the coded outcome: r * sigma_sq.
double coded_variance(const CodingScheme& scheme, double sigma_sq);

// Multiplication count for encoding an m x q_cols block (diagnostic only).
std::uint64_t encode_multiplications(const CodingScheme& scheme, std::size_t q_cols);

}  // namespace ota
