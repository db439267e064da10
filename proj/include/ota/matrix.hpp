#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ota {

using cdouble = std::complex<double>;

// Dense row-major complex matrix. Sizes in this project stay below ~512 per
// side, so no blocking or sparsity.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cdouble>& entries() const { return data_; }
    std::vector<cdouble>& entries() { return data_; }

    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    ComplexMatrix conjugate_transpose() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

// Exact complex product; throws std::invalid_argument on dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Sum of squared moduli of all entries.
double frob_norm_sq(const ComplexMatrix& a);

// Solves the Hermitian positive definite system G X = B by Cholesky
// factorization. Throws std::runtime_error when G is numerically singular
// (diagonal pivot ratio below 1e-12).
ComplexMatrix cholesky_solve(const ComplexMatrix& g, const ComplexMatrix& b);

}  // namespace ota
