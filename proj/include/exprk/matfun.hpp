#pragma once

#include <vector>

#include "exprk/matrix.hpp"

namespace exprk {

/// e^A by scaling and squaring: halve A s = max(0, ceil(log2 ||A||_1)) times,
/// apply a degree-30 truncated Taylor series to the scaled matrix, square s
/// times. Throws NonFiniteError if a squaring pass overflows.
DenseMatrix expm_dense(const DenseMatrix& A);

/// e^{tA} B without forming e^{tA}: the Taylor series of e^{tA/s} is applied
/// to B in s passes, s chosen so each pass sees ||tA/s||_1 <= 1. Terms stop
/// early once they no longer move the accumulator.
DenseMatrix expm_action(const DenseMatrix& A, const DenseMatrix& B, double t);
Vector expm_action(const DenseMatrix& A, const Vector& b, double t);

/// phi_k(A) for k = 0..4, read off one exponential of the block-augmented
/// matrix [[A, E], [0, N]] where E = [I 0 ... 0] and N is the block
/// index-lowering shift: phi_k(A) is the top-right n x n block.
DenseMatrix phi_dense(int k, const DenseMatrix& A);

/// Linear combination sum_{k=0}^{p} t^k phi_k(tA) u_k evaluated with a single
/// exponential action on an (n+p)-dimensional augmented system. `u` holds the
/// p+1 vectors u_0..u_p; p <= 4.
Vector phipm_action(const DenseMatrix& A, const std::vector<Vector>& u, double t);

/// Propagator cache for a fixed step size: mats[k] = phi_k(h A), k = 0..order.
struct PhiTable {
    double h = 0.0;
    int order = 0;
    std::vector<DenseMatrix> mats;
};

/// Builds phi_0..phi_order of hA (order <= 4).
PhiTable make_phi_table(const DenseMatrix& A, double h, int order);

}  // namespace exprk
