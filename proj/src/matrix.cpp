#include "ota/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ota {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw std::invalid_argument("ComplexMatrix: entries length must equal rows*cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0,
                                   std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw std::invalid_argument("ComplexMatrix::block: out of range");
    ComplexMatrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate_transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions disagree");
    ComplexMatrix c(a.rows(), b.cols());
    // ikj order so the inner loop streams rows of b and c.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

double frob_norm_sq(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& v : a.entries()) s += std::norm(v);
    return s;
}

ComplexMatrix cholesky_solve(const ComplexMatrix& g, const ComplexMatrix& b) {
    const std::size_t n = g.rows();
    if (g.cols() != n || b.rows() != n)
        throw std::invalid_argument("cholesky_solve: shape mismatch");

    // G = L L^H with L lower triangular.
    ComplexMatrix l(n, n);
    double max_diag = 0.0, min_diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = g(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 0.0)) throw std::runtime_error("cholesky_solve: matrix not positive definite");
        const double lj = std::sqrt(d);
        l(j, j) = lj;
        max_diag = (j == 0) ? d : std::max(max_diag, d);
        min_diag = (j == 0) ? d : std::min(min_diag, d);
        for (std::size_t i = j + 1; i < n; ++i) {
            cdouble s = g(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / lj;
        }
    }
    if (min_diag < 1e-12 * max_diag)
        throw std::runtime_error("cholesky_solve: numerically singular");

    // Forward then back substitution, one right-hand side column at a time.
    ComplexMatrix x = b;
    const std::size_t m = b.cols();
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cdouble s = x(i, c);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
            x(i, c) = s / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cdouble s = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * x(k, c);
            x(ii, c) = s / l(ii, ii);
        }
    }
    return x;
}

}  // namespace ota
