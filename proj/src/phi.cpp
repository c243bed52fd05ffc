#include "exprk/phi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace exprk {

namespace {

constexpr int kMaxOrder = 8;

using Cld = std::complex<long double>;

long double inv_factorial(int j) {
    long double f = 1.0L;
    for (int i = 2; i <= j; ++i) f *= static_cast<long double>(i);
    return 1.0L / f;
}

// phi_k via the downward-stable exponential recursion. Fine for |z| >= 1;
// for small |z| each division amplifies the cancellation in the numerator.
Cld phi_recursion(int k, Cld z) {
    Cld value = std::exp(z);
    for (int j = 0; j < k; ++j) value = (value - Cld(inv_factorial(j), 0.0L)) / z;
    return value;
}

// phi_k(z) = sum_j z^j / (j + k)!. Converges fast for the |z| < 1.5 band this
// is used in; capped at 60 terms, stopping once a term no longer moves the sum
// at extended precision.
Cld phi_taylor(int k, Cld z) {
    Cld term(inv_factorial(k), 0.0L);
    Cld sum = term;
    for (int j = 1; j < 60; ++j) {
        term *= z / static_cast<long double>(j + k);
        sum += term;
        if (std::abs(term) < 1e-17L * std::abs(sum)) break;
    }
    return sum;
}

// Cauchy-integral average over a circle of radius 1 about z, 32 trapezoid
// nodes. Each node t is at distance 1 from z, so it may land in either
// regime; route per node by |t|.
Cld phi_contour(int k, Cld z) {
    constexpr int kNodes = 32;
    const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
    Cld acc(0.0L, 0.0L);
    for (int j = 0; j < kNodes; ++j) {
        const long double theta = two_pi * static_cast<long double>(j) / kNodes;
        const Cld node = z + Cld(std::cos(theta), std::sin(theta));
        acc += (std::abs(node) < 1.5L) ? phi_taylor(k, node) : phi_recursion(k, node);
    }
    acc /= static_cast<long double>(kNodes);
    // For real z the node set is conjugate-symmetric, so the exact average is
    // real; drop the roundoff-level imaginary residue.
    if (z.imag() == 0.0L) acc = Cld(acc.real(), 0.0L);
    return acc;
}

}  // namespace

std::complex<double> phi_scalar(int k, std::complex<double> z, PhiStrategy strategy) {
    if (k < 0 || k > kMaxOrder) {
        throw std::invalid_argument("phi_scalar: order " + std::to_string(k)
                                    + " unsupported (expected 0 <= k <= "
                                    + std::to_string(kMaxOrder) + ")");
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::domain_error("phi_scalar: non-finite argument");
    }

    // phi_k(0) = 1/k! exactly, whatever the strategy; k! <= 8! is exact in
    // a double, so the division is correctly rounded.
    if (z == std::complex<double>(0.0, 0.0)) {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= static_cast<double>(i);
        return {1.0 / fact, 0.0};
    }

    const Cld zl(static_cast<long double>(z.real()), static_cast<long double>(z.imag()));
    PhiStrategy route = strategy;
    if (route == PhiStrategy::Auto) {
        const double mag = std::abs(z);
        if (mag >= 1.0) {
            route = PhiStrategy::Recursion;
        } else if (mag < 0.5) {
            route = PhiStrategy::TaylorSeries;
        } else {
            route = PhiStrategy::ContourTrapezoid;
        }
    }

    Cld value;
    switch (route) {
        case PhiStrategy::Recursion: value = phi_recursion(k, zl); break;
        case PhiStrategy::TaylorSeries: value = phi_taylor(k, zl); break;
        case PhiStrategy::ContourTrapezoid: value = phi_contour(k, zl); break;
        default: throw std::invalid_argument("phi_scalar: unknown strategy");
    }
    return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

}  // namespace exprk
