#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "exprk/integrators.hpp"

namespace exprk {

/// Axis-aligned window in the complex plane.
struct StabilityWindow {
    double re_min = -5.0;
    double re_max = 1.0;
    double im_min = -3.0;
    double im_max = 3.0;
};

/// Boolean raster of a stability region, sampled at cell centers. Row 0 is
/// the top of the window (largest imaginary part), matching image order.
struct StabilityRaster {
    StabilityWindow window;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<std::uint8_t> mask;  // row-major, 1 = |R(z)| < 1

    bool at(std::size_t ix, std::size_t iy) const { return mask[iy * nx + ix] != 0; }
    /// Center of cell (ix, iy) as a complex number.
    std::complex<double> cell_center(std::size_t ix, std::size_t iy) const;
};

/// Linear stability function R(z) of a stepper applied to u' = lambda u with
/// z = h lambda. The exponential schemes reproduce e^z exactly on this
/// equation (their nonlinear part vanishes). Throws std::domain_error at the
/// Rosenbrock pole z = 1/gamma.
std::complex<double> stability_function(Method method, std::complex<double> z,
                                        double gamma = 0.5);

/// Rasterizes {z : |R(z)| < 1} over the window. Membership is strict; the
/// Rosenbrock pole rasterizes as unstable.
StabilityRaster rasterize(Method method, const StabilityWindow& window,
                          std::size_t nx, std::size_t ny, double gamma = 0.5);

/// Negative real abscissa where |R(x)| first reaches 1, located by bisection
/// to 1e-8. Returns nullopt when the method is stable on the whole negative
/// real axis (the exponential schemes; Rosenbrock with gamma >= 1/2).
std::optional<double> real_axis_boundary(Method method, double gamma = 0.5);

}  // namespace exprk
