#include "exprk/stability.hpp"

#include <cmath>
#include <stdexcept>

namespace exprk {

std::complex<double> StabilityRaster::cell_center(std::size_t ix, std::size_t iy) const {
    const double dx = (window.re_max - window.re_min) / static_cast<double>(nx);
    const double dy = (window.im_max - window.im_min) / static_cast<double>(ny);
    return {window.re_min + (static_cast<double>(ix) + 0.5) * dx,
            window.im_max - (static_cast<double>(iy) + 0.5) * dy};
}

std::complex<double> stability_function(Method method, std::complex<double> z, double gamma) {
    switch (method) {
        case Method::EtdEuler:
        case Method::ExpRk2:
            // On u' = lambda u the nonlinear part is zero and both schemes
            // propagate by e^{h lambda} exactly.
            return std::exp(z);
        case Method::Rk2:
            return 1.0 + z + 0.5 * z * z;
        case Method::Rk4:
            return 1.0 + z + 0.5 * z * z + z * z * z / 6.0 + z * z * z * z / 24.0;
        case Method::Rb2: {
            const std::complex<double> denom = 1.0 - gamma * z;
            if (denom == std::complex<double>(0.0, 0.0)) {
                throw std::domain_error("stability_function: z = 1/gamma is a pole of the "
                                        "Rosenbrock stability function");
            }
            return (1.0 + (1.0 - gamma) * z) / denom;
        }
    }
    throw std::invalid_argument("stability_function: unknown method");
}

StabilityRaster rasterize(Method method, const StabilityWindow& window,
                          std::size_t nx, std::size_t ny, double gamma) {
    if (nx == 0 || ny == 0) throw std::invalid_argument("rasterize: resolution must be positive");
    if (!(window.re_min < window.re_max) || !(window.im_min < window.im_max)) {
        throw std::invalid_argument("rasterize: degenerate window");
    }
    StabilityRaster raster;
    raster.window = window;
    raster.nx = nx;
    raster.ny = ny;
    raster.mask.assign(nx * ny, 0);
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const std::complex<double> z = raster.cell_center(ix, iy);
            bool stable = false;
            if (method == Method::Rb2 && 1.0 - gamma * z == std::complex<double>(0.0, 0.0)) {
                stable = false;  // the pole is certainly not in the stable set
            } else {
                stable = std::abs(stability_function(method, z, gamma)) < 1.0;
            }
            raster.mask[iy * nx + ix] = stable ? 1 : 0;
        }
    }
    return raster;
}

std::optional<double> real_axis_boundary(Method method, double gamma) {
    // Methods whose stability region contains the whole negative real axis
    // have no finite crossing to report.
    if (method == Method::EtdEuler || method == Method::ExpRk2) return std::nullopt;
    if (method == Method::Rb2 && gamma >= 0.5) return std::nullopt;

    const auto unstable = [&](double x) {
        return std::abs(stability_function(method, {x, 0.0}, gamma)) >= 1.0;
    };

    // Bracket the crossing: stay just left of 0 (every explicit R has
    // |R| < 1 there), then double outward until |R| >= 1.
    double stable_end = -1e-3;
    double unstable_end = -2e-3;
    while (!unstable(unstable_end)) {
        stable_end = unstable_end;
        unstable_end *= 2.0;
        if (unstable_end < -1e12) return std::nullopt;  // looks unbounded after all
    }
    while (stable_end - unstable_end > 1e-8) {
        const double mid = 0.5 * (stable_end + unstable_end);
        (unstable(mid) ? unstable_end : stable_end) = mid;
    }
    return 0.5 * (stable_end + unstable_end);
}

}  // namespace exprk
