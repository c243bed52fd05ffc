#include "exprk/krylov.hpp"

#include <cmath>
#include <stdexcept>

#include "exprk/matfun.hpp"

namespace exprk {

ArnoldiResult arnoldi(const DenseMatrix& A, const Vector& v, std::size_t m) {
    if (!A.is_square()) throw std::invalid_argument("arnoldi: matrix must be square");
    if (A.rows() != v.size()) throw std::invalid_argument("arnoldi: start vector length mismatch");
    if (m < 1 || m > A.rows()) {
        throw std::invalid_argument("arnoldi: requested dimension must be in [1, n]");
    }
    const double vnorm = norm2(v);
    if (vnorm == 0.0) throw std::domain_error("arnoldi: zero start vector");

    const std::size_t n = A.rows();
    DenseMatrix V(n, m, 0.0);
    DenseMatrix H(m, m, 0.0);
    for (std::size_t i = 0; i < n; ++i) V(i, 0) = v[i] / vnorm;

    // Breakdown means the next direction is numerically zero relative to the
    // operator scale: the Krylov space is invariant and already exact.
    const double breakdown_tol = 1e-12 * std::max(1.0, A.norm1());
    std::size_t realized = m;

    for (std::size_t j = 0; j < m; ++j) {
        Vector w(n);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t jj = 0; jj < n; ++jj) acc += A(i, jj) * V(jj, j);
            w[i] = acc;
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i <= j; ++i) {
                double hij = 0.0;
                for (std::size_t r = 0; r < n; ++r) hij += V(r, i) * w[r];
                for (std::size_t r = 0; r < n; ++r) w[r] -= hij * V(r, i);
                H(i, j) += hij;
            }
        }
        const double beta = norm2(w);
        if (j + 1 < m) {
            if (beta <= breakdown_tol) {
                realized = j + 1;
                break;
            }
            H(j + 1, j) = beta;
            for (std::size_t i = 0; i < n; ++i) V(i, j + 1) = w[i] / beta;
        }
    }

    if (realized == m) return {V, H, m};
    DenseMatrix Vs(n, realized);
    DenseMatrix Hs(realized, realized);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < realized; ++j) Vs(i, j) = V(i, j);
    for (std::size_t i = 0; i < realized; ++i)
        for (std::size_t j = 0; j < realized; ++j) Hs(i, j) = H(i, j);
    return {Vs, Hs, realized};
}

Vector krylov_exp_action(const DenseMatrix& A, const Vector& v, double t, std::size_t m) {
    if (!std::isfinite(t)) throw std::invalid_argument("krylov_exp_action: non-finite t");
    const ArnoldiResult kry = arnoldi(A, v, m);
    const DenseMatrix E = expm_dense(t * kry.H);
    // y = ||v|| e^{tH} e_1 is the first column of e^{tH}, scaled.
    const double vnorm = norm2(v);
    Vector out(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < kry.m; ++j) acc += kry.V(i, j) * E(j, 0);
        out[i] = vnorm * acc;
    }
    return out;
}

}  // namespace exprk
