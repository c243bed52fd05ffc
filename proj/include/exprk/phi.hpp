#pragma once

#include <complex>

namespace exprk {

/// Evaluation route for the scalar phi functions.
enum class PhiStrategy {
    Auto,              ///< pick a route from |z|; see phi_scalar notes
    Recursion,         ///< phi_{k+1}(z) = (phi_k(z) - 1/k!) / z seeded with e^z
    TaylorSeries,      ///< sum_{j>=0} z^j / (j + k)!
    ContourTrapezoid,  ///< trapezoid rule on a unit circle centered at z
};

/// Scalar phi functions: phi_0(z) = e^z and
///
///     phi_{k+1}(z) = (phi_k(z) - 1/k!) / z,    phi_k(0) = 1/k!.
///
/// Orders k = 0..8 are supported. The recursion subtracts nearly equal
/// quantities for small |z| and loses roughly a digit per division, so Auto
/// uses it only for |z| >= 1, switches to the Taylor series for |z| < 0.5,
/// and integrates over a contour in the in-between band where neither route
/// is comfortable on its own. Internals run in extended precision so the
/// routes agree to ~1e-11 even where recursion sheds digits.
///
/// Throws std::invalid_argument for k outside [0, 8] and std::domain_error
/// for non-finite z.
std::complex<double> phi_scalar(int k, std::complex<double> z,
                                PhiStrategy strategy = PhiStrategy::Auto);

}  // namespace exprk
