#pragma once

#include <string>
#include <vector>

#include "exprk/integrators.hpp"
#include "exprk/problems.hpp"
#include "exprk/stability.hpp"

namespace exprk {

/// One benchmark request: a problem, the methods to run on it, and the step
/// sizes to try. Wall times are medians over `repetitions` identical runs.
/// `seed` is recorded for reproducibility bookkeeping; the sweep itself is
/// deterministic.
struct SweepConfig {
    std::string problem;
    ParamMap params;
    std::vector<Method> methods;
    std::vector<double> step_sizes;  // normalized to descending order
    int repetitions = 5;
    int seed = 0;
    double gamma = 0.5;  // Rosenbrock stage parameter
};

/// One sweep row. `rel_error` is NaN when the run left finite arithmetic
/// (then `finite` is false) or when the reference was too close to zero to
/// compare against; either way the CSV column reads "nan".
struct SweepRecord {
    Method method = Method::EtdEuler;
    double h = 0.0;
    double rel_error = 0.0;
    double wall_time_s = 0.0;
    bool finite = true;
};

/// Componentwise mixed error: relative against components of the reference
/// with magnitude above 1e-14, absolute against the rest; the maximum over
/// components is returned. Throws std::domain_error when every reference
/// component is near zero (nothing to compare against).
double relative_error(const Vector& approx, const Vector& reference);

/// Runs every (method, step) pair of the config against the problem's exact
/// solution when it has one, else against reference_solution at tf. Errors
/// are measured at tf only. Runs that go non-finite (or whose implicit stage
/// fails) are recorded with finite = false rather than thrown; a degenerate
/// reference records rel_error = NaN.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// Writes records as CSV: header "method,h,rel_error,wall_time_s,finite",
/// rows grouped by method (first-appearance order) with h descending inside
/// each group; h in scientific notation with 6 significant digits,
/// rel_error/wall time in full round-trip precision (non-finite as "nan"),
/// finite as 1/0.
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);

/// Reads back what emit_csv wrote. Throws std::runtime_error on malformed
/// input or an unreadable path.
std::vector<SweepRecord> parse_csv(const std::string& path);

enum class RasterFormat { Csv, Pgm };

/// Writes a stability raster. CSV: one metadata line
/// "re_min,re_max,im_min,im_max,nx,ny", then ny comma-separated 0/1 rows,
/// top row first. PGM: plain "P2" with maxval 1, same row order.
void emit_raster(const StabilityRaster& raster, const std::string& path, RasterFormat format);

}  // namespace exprk
