#pragma once

#include <cstddef>
#include <vector>

namespace exprk {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. Problems in this library are
/// desk-scale (augmented systems stay well under 100x100), so there is no
/// view or expression machinery on purpose: every operation copies.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(const Vector& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_square() const { return rows_ == cols_ && rows_ > 0; }
    bool is_finite() const;

    /// Induced 1-norm: maximum absolute column sum.
    double norm1() const;
    /// Largest absolute entry.
    double max_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);
Vector operator*(const DenseMatrix& a, const Vector& x);

/// Largest entrywise |a(i,j) - b(i,j)|; matrices must have equal shape.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

double norm2(const Vector& x);
double norm_inf(const Vector& x);
double dot(const Vector& x, const Vector& y);
bool is_finite(const Vector& x);

}  // namespace exprk
