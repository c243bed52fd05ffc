#include "exprk/matfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "exprk/errors.hpp"

namespace exprk {

namespace {

// Fixed Taylor degree for the scaled matrix (||A/2^s||_1 <= 1): term 31 of
// e^z at |z| = 1 is below 1/31! ~ 1e-34, far under double roundoff.
constexpr int kTaylorDegree = 30;

DenseMatrix taylor_exp(const DenseMatrix& B) {
    DenseMatrix sum = DenseMatrix::identity(B.rows());
    DenseMatrix term = sum;
    for (int j = 1; j <= kTaylorDegree; ++j) {
        term = term * B;
        term = (1.0 / j) * term;
        sum = sum + term;
    }
    return sum;
}

void require_square_finite(const DenseMatrix& A, const char* who) {
    if (!A.is_square()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if (!A.is_finite()) throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

}  // namespace

DenseMatrix expm_dense(const DenseMatrix& A) {
    require_square_finite(A, "expm_dense");
    const double norm = A.norm1();
    int s = 0;
    if (norm > 1.0) s = static_cast<int>(std::ceil(std::log2(norm)));
    DenseMatrix result = taylor_exp(std::ldexp(1.0, -s) * A);
    for (int stage = 1; stage <= s; ++stage) {
        result = result * result;
        if (!result.is_finite()) {
            throw NonFiniteError("expm_dense: non-finite result in squaring stage "
                                 + std::to_string(stage) + " of " + std::to_string(s),
                                 stage);
        }
    }
    return result;
}

DenseMatrix expm_action(const DenseMatrix& A, const DenseMatrix& B, double t) {
    require_square_finite(A, "expm_action");
    if (A.rows() != B.rows()) {
        throw std::invalid_argument("expm_action: operand has " + std::to_string(B.rows())
                                    + " rows, matrix is " + std::to_string(A.rows()) + "x"
                                    + std::to_string(A.cols()));
    }
    if (!std::isfinite(t)) throw std::invalid_argument("expm_action: non-finite t");
    if (!B.is_finite()) throw std::invalid_argument("expm_action: non-finite operand");

    // One pass per unit of ||tA||_1 keeps every Taylor argument small.
    const int passes = std::max(1, static_cast<int>(std::ceil(A.norm1() * std::abs(t))));
    DenseMatrix out = B;
    for (int pass = 1; pass <= passes; ++pass) {
        DenseMatrix term = out;
        DenseMatrix acc = out;
        for (int j = 1; j <= kTaylorDegree; ++j) {
            term = A * term;
            term = (t / (static_cast<double>(passes) * j)) * term;
            acc = acc + term;
            if (term.max_norm() <= 1e-17 * acc.max_norm()) break;
        }
        if (!acc.is_finite()) {
            throw NonFiniteError("expm_action: non-finite intermediate in pass "
                                 + std::to_string(pass) + " of " + std::to_string(passes),
                                 pass);
        }
        out = acc;
    }
    return out;
}

Vector expm_action(const DenseMatrix& A, const Vector& b, double t) {
    DenseMatrix col(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) col(i, 0) = b[i];
    DenseMatrix res = expm_action(A, col, t);
    Vector out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = res(i, 0);
    return out;
}

DenseMatrix phi_dense(int k, const DenseMatrix& A) {
    require_square_finite(A, "phi_dense");
    if (k < 0 || k > 4) {
        throw std::invalid_argument("phi_dense: order " + std::to_string(k)
                                    + " unsupported (expected 0 <= k <= 4)");
    }
    if (k == 0) return expm_dense(A);

    const std::size_t n = A.rows();
    DenseMatrix aug(n * (k + 1), n * (k + 1), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    // E = [I 0 ... 0] couples the system block to the chain of integrators...
    for (std::size_t i = 0; i < n; ++i) aug(i, n + i) = 1.0;
    // ...and N shifts the chain down one order per block.
    for (int b = 1; b < k; ++b)
        for (std::size_t i = 0; i < n; ++i) aug(n * b + i, n * (b + 1) + i) = 1.0;

    const DenseMatrix big = expm_dense(aug);
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = big(i, n * k + j);
    return out;
}

Vector phipm_action(const DenseMatrix& A, const std::vector<Vector>& u, double t) {
    require_square_finite(A, "phipm_action");
    if (u.empty()) throw std::invalid_argument("phipm_action: need at least u_0");
    const std::size_t p = u.size() - 1;
    if (p > 4) {
        throw std::invalid_argument("phipm_action: order " + std::to_string(p)
                                    + " unsupported (expected p <= 4)");
    }
    const std::size_t n = A.rows();
    for (const Vector& uk : u) {
        if (uk.size() != n) throw std::invalid_argument("phipm_action: vector length mismatch");
        if (!is_finite(uk)) throw std::invalid_argument("phipm_action: non-finite vector");
    }
    if (!std::isfinite(t)) throw std::invalid_argument("phipm_action: non-finite t");
    if (p == 0) return expm_action(A, u[0], t);

    // Augment with a p-dimensional integrator chain: columns carry u_p..u_1,
    // the chain shifts indices down, and e^{t Aug} applied to [u_0; e_p]
    // accumulates sum t^k phi_k(tA) u_k in the leading block.
    DenseMatrix aug(n + p, n + p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < n; ++i) aug(i, n + j) = u[p - j][i];
    for (std::size_t j = 0; j + 1 < p; ++j) aug(n + j, n + j + 1) = 1.0;

    Vector v(n + p, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i] = u[0][i];
    v[n + p - 1] = 1.0;

    const Vector w = expm_action(aug, v, t);
    return Vector(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
}

PhiTable make_phi_table(const DenseMatrix& A, double h, int order) {
    require_square_finite(A, "make_phi_table");
    if (order < 0 || order > 4) {
        throw std::invalid_argument("make_phi_table: order " + std::to_string(order)
                                    + " unsupported (expected 0 <= order <= 4)");
    }
    if (!std::isfinite(h)) throw std::invalid_argument("make_phi_table: non-finite h");

    PhiTable table;
    table.h = h;
    table.order = order;
    const DenseMatrix hA = h * A;
    table.mats.push_back(expm_dense(hA));
    for (int k = 1; k <= order; ++k) table.mats.push_back(phi_dense(k, hA));
    return table;
}

}  // namespace exprk
