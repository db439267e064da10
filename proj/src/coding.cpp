#include "ota/coding.hpp"

#include <stdexcept>
#include <utility>

namespace ota {

CodingScheme make_identity_code(std::size_t m) {
    if (m == 0) throw std::invalid_argument("make_identity_code: m must be >= 1");
    CodingScheme s;
    s.variant = CodeVariant::identity;
    s.m = s.n = m;
    s.encoder = ComplexMatrix::identity(m);
    s.decoder = ComplexMatrix::identity(m);
    return s;
}

CodingScheme make_repetition_code(std::size_t m, std::size_t factor) {
    if (m == 0 || factor < 2)
        throw std::invalid_argument("make_repetition_code: need m >= 1 and factor >= 2");
    CodingScheme s;
    s.variant = CodeVariant::repetition;
    s.m = m;
    s.n = m * factor;
    s.segments = factor;
    s.encoder = ComplexMatrix::zero(s.n, m);
    s.decoder = ComplexMatrix::zero(m, s.n);
    const double w = 1.0 / static_cast<double>(factor);
    for (std::size_t c = 0; c < factor; ++c) {
        for (std::size_t i = 0; i < m; ++i) {
            s.encoder(c * m + i, i) = 1.0;
            s.decoder(i, c * m + i) = w;
        }
    }
    return s;
}

CodingScheme make_random_code(std::size_t m, std::size_t n, RngStream& rng,
                              bool hermitian_decoder) {
    if (n < m || m == 0) throw std::invalid_argument("make_random_code: need n >= m >= 1");
    CodingScheme s;
    s.variant = CodeVariant::random_gaussian;
    s.m = m;
    s.n = n;
    for (int attempt = 0; attempt < 16; ++attempt) {
        ComplexMatrix f = sample_cscg_matrix(rng, n, m, 1.0 / static_cast<double>(n));
        const ComplexMatrix fh = f.conjugate_transpose();
        if (hermitian_decoder) {
            s.encoder = std::move(f);
            s.decoder = fh;
            return s;
        }
        try {
            ComplexMatrix dagger = cholesky_solve(matmul(fh, f), fh);
            s.encoder = std::move(f);
            s.decoder = std::move(dagger);
            return s;
        } catch (const std::runtime_error&) {
            // singular draw, probability-zero event; redraw from the stream
        }
    }
    throw std::runtime_error("make_random_code: repeated singular draws");
}

CodingScheme make_explicit_code(ComplexMatrix encoder, ComplexMatrix decoder) {
    if (encoder.rows() < encoder.cols() || decoder.rows() != encoder.cols() ||
        decoder.cols() != encoder.rows())
        throw std::invalid_argument("make_explicit_code: shape mismatch");
    CodingScheme s;
    s.variant = CodeVariant::explicit_pair;
    s.m = encoder.cols();
    s.n = encoder.rows();
    s.encoder = std::move(encoder);
    s.decoder = std::move(decoder);
    return s;
}

ComplexMatrix encode(const CodingScheme& scheme, const ComplexMatrix& a_kl) {
    if (a_kl.rows() != scheme.m) throw std::invalid_argument("encode: row count != m");
    if (scheme.variant == CodeVariant::identity) return a_kl;
    return matmul(scheme.encoder, a_kl);
}

ComplexMatrix decode(const CodingScheme& scheme, const ComplexMatrix& z_k) {
    if (z_k.rows() != scheme.n) throw std::invalid_argument("decode: row count != n");
    if (scheme.variant == CodeVariant::identity) return z_k;
    return matmul(scheme.decoder, z_k);
}

double coded_variance(const CodingScheme& scheme, double sigma_sq) {
    if (sigma_sq <= 0.0) throw std::invalid_argument("coded_variance: sigma_sq must be positive");
    return scheme.code_rate() * sigma_sq;
}

std::uint64_t encode_multiplications(const CodingScheme& scheme, std::size_t q_cols) {
    if (scheme.variant == CodeVariant::identity) return 0;
    return static_cast<std::uint64_t>(scheme.n) * scheme.m * q_cols;
}

}  // namespace ota
