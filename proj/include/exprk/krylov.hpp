#pragma once

#include <cstddef>

#include "exprk/matrix.hpp"

namespace exprk {

/// Output of the Arnoldi process: an orthonormal basis V (n x m, columns)
/// of the Krylov space span{v, Av, ..., A^{m-1}v} and the projected
/// upper-Hessenberg matrix H = V^T A V (m x m). `m` is the realized
/// dimension, which drops below the request when the process breaks down
/// (the Krylov space became invariant early).
struct ArnoldiResult {
    DenseMatrix V;
    DenseMatrix H;
    std::size_t m = 0;
};

/// Modified Gram-Schmidt Arnoldi with one reorthogonalization pass. Plain
/// MGS alone can drift past the 1e-12 orthonormality target on clustered
/// spectra, hence the second pass.
ArnoldiResult arnoldi(const DenseMatrix& A, const Vector& v, std::size_t m);

/// Krylov approximation of e^{tA} v: ||v||_2 * V_m * e^{t H_m} * e_1.
/// Exact (to roundoff) when m reaches the dimension of the Krylov space.
Vector krylov_exp_action(const DenseMatrix& A, const Vector& v, double t, std::size_t m);

}  // namespace exprk
