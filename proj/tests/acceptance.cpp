// Acceptance suite: nine end-to-end criteria, one PASS/FAIL line each.
// Exit status is the number of failed criteria, so ctest reports red when
// any criterion is out of tolerance. Tolerances are fixed here, not tuned
// to the implementation.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exprk/harness.hpp"
#include "exprk/krylov.hpp"
#include "exprk/matfun.hpp"
#include "exprk/phi.hpp"
#include "exprk/problems.hpp"
#include "exprk/stability.hpp"
#include "oracles.hpp"

namespace {

using exprk::DenseMatrix;
using exprk::Method;
using exprk::Vector;

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

std::string num(double x, int prec = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Scalar phi functions: exact values at zero, the defining recursion on
//    moderate-to-large |z|, and cross-strategy agreement on the annulus where
//    every evaluation route is expected to hold 1e-10.
// ---------------------------------------------------------------------------
CriterionResult phi_identities() {
    using exprk::PhiStrategy;
    const PhiStrategy routes[] = {PhiStrategy::Auto, PhiStrategy::Recursion,
                                  PhiStrategy::TaylorSeries,
                                  PhiStrategy::ContourTrapezoid};
    double factorial = 1.0;
    for (int k = 0; k <= 8; ++k) {
        if (k > 0) factorial *= k;
        for (PhiStrategy route : routes) {
            const auto got = exprk::phi_scalar(k, 0.0, route);
            if (got != std::complex<double>(1.0 / factorial, 0.0)) {
                return {false, "phi_" + std::to_string(k) + "(0) != 1/k!"};
            }
        }
    }

    const double two_pi = 2.0 * std::acos(-1.0);
    double max_residual = 0.0;
    for (double radius : {1.0, 3.1622776601683795, 10.0, 31.622776601683793, 100.0}) {
        for (int a = 0; a < 12; ++a) {
            const std::complex<double> z = std::polar(radius, two_pi * a / 12.0);
            double fact = 1.0;
            for (int k = 0; k <= 7; ++k) {
                if (k > 0) fact *= k;
                const auto lo = exprk::phi_scalar(k, z);
                const auto hi = exprk::phi_scalar(k + 1, z);
                const double residual =
                    std::abs(hi * z + 1.0 / fact - lo) / std::max(1.0, std::abs(lo));
                max_residual = std::max(max_residual, residual);
            }
        }
    }

    // Orders above 4 shed digits through the recursion inside the unit disc,
    // so the agreement window covers the orders the steppers consume.
    double max_spread = 0.0;
    for (double radius : {0.1, 0.2, 0.5, 0.8, 1.0, 2.0, 5.0, 10.0}) {
        for (int a = 0; a < 8; ++a) {
            const std::complex<double> z = std::polar(radius, two_pi * a / 8.0);
            for (int k = 0; k <= 4; ++k) {
                std::vector<std::complex<double>> values;
                for (PhiStrategy route : routes) values.push_back(exprk::phi_scalar(k, z, route));
                double scale = std::max(1.0, std::abs(values[0]));
                for (std::size_t i = 0; i < values.size(); ++i) {
                    for (std::size_t j = i + 1; j < values.size(); ++j) {
                        max_spread =
                            std::max(max_spread, std::abs(values[i] - values[j]) / scale);
                    }
                }
            }
        }
    }

    const bool pass = max_residual <= 1e-11 && max_spread <= 1e-10;
    return {pass, "max recursion residual " + num(max_residual) +
                      " (tol 1e-11), max cross-strategy spread " + num(max_spread) +
                      " (tol 1e-10, orders <= 4)"};
}

// ---------------------------------------------------------------------------
// 2. Dense and action kernels against independent oracles, 50 random
//    instances each.
// ---------------------------------------------------------------------------
CriterionResult kernel_oracles() {
    std::mt19937 rng(42);
    double worst_expm = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const DenseMatrix A = oracle::random_symmetric_with_spectrum(rng, 5, -100.0, 0.0);
        const DenseMatrix expected =
            oracle::symmetric_matrix_function(A, [](double x) { return std::exp(x); });
        const DenseMatrix got = exprk::expm_dense(A);
        worst_expm = std::max(worst_expm, exprk::max_abs_diff(got, expected) /
                                              std::max(1.0, expected.max_norm()));
    }

    double worst_phipm = 0.0;
    std::uniform_real_distribution<double> tdist(0.2, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 5;
        const DenseMatrix A = oracle::random_dense(rng, n, 1.0);
        const int p = trial % 4 + 1;
        std::vector<Vector> u;
        for (int k = 0; k <= p; ++k) u.push_back(oracle::random_vector(rng, n, 1.0));
        const double t = tdist(rng);
        const Vector got = exprk::phipm_action(A, u, t);

        const DenseMatrix tA = t * A;
        Vector expected(n, 0.0);
        double tk = 1.0;
        for (int k = 0; k <= p; ++k) {
            const Vector term = exprk::phi_dense(k, tA) * u[static_cast<std::size_t>(k)];
            for (int i = 0; i < n; ++i) expected[static_cast<std::size_t>(i)] += tk * term[static_cast<std::size_t>(i)];
            tk *= t;
        }
        double scale = std::max(1.0, exprk::norm_inf(expected));
        Vector diff = got;
        for (int i = 0; i < n; ++i) diff[static_cast<std::size_t>(i)] -= expected[static_cast<std::size_t>(i)];
        worst_phipm = std::max(worst_phipm, exprk::norm_inf(diff) / scale);
    }

    double worst_krylov = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + trial % 6;
        const DenseMatrix A = oracle::random_dense(rng, n, 1.0);
        const Vector v = oracle::random_vector(rng, n, 1.0);
        const Vector dense = exprk::expm_action(A, v, 1.0);
        const Vector got = exprk::krylov_exp_action(A, v, 1.0, n);
        Vector diff = got;
        for (std::size_t i = 0; i < n; ++i) diff[i] -= dense[i];
        worst_krylov = std::max(worst_krylov,
                                exprk::norm_inf(diff) / std::max(1.0, exprk::norm_inf(dense)));
    }

    const bool pass = worst_expm <= 1e-10 && worst_phipm <= 1e-9 && worst_krylov <= 1e-10;
    return {pass, "worst rel diff: expm vs eigendecomposition " + num(worst_expm) +
                      " (tol 1e-10), phipm vs term-by-term " + num(worst_phipm) +
                      " (tol 1e-9), full-dimension Krylov " + num(worst_krylov) +
                      " (tol 1e-10)"};
}

// ---------------------------------------------------------------------------
// 3. Stiff scalar walk-through: one explicit RK4 step at two step sizes, one
//    exponential Euler step. The exponential target is the definition-
//    consistent value of e^{-10} + 1e-2 phi_1(-10) g(0, 1); its five-digit
//    rounding 1.04540e-3 (which folds phi_1(-10) ~ 0.1) sits 4.5e-8 away,
//    outside the 1e-8 tolerance, so the check anchors on the full-precision
//    value and reports the distance to the rounded one.
// ---------------------------------------------------------------------------
CriterionResult stiff_walk_through() {
    const auto toy = exprk::make_problem("toy");

    const double big = exprk::step_rk4(toy.general, 0.0, toy.general.u0, 0.01)[0];
    const double small = exprk::step_rk4(toy.general, 0.0, toy.general.u0, 0.001)[0];
    const bool rk4_ok = std::abs(big - 290.59) <= 0.01 * 290.59 &&
                        std::abs(small - 0.3755) <= 0.01 * 0.3755;

    const auto props = exprk::make_propagators(toy.semilinear.A, 0.01);
    const double etd = exprk::step_etd_euler(toy.semilinear, props, 0.0, toy.semilinear.u0)[0];
    const double target = 1.0453545298327224e-3;
    const bool etd_ok = std::abs(etd - target) <= 1e-8;

    return {rk4_ok && etd_ok,
            "rk4 h=1e-2 -> " + num(big, 6) + " (target 290.59 +/- 1%), h=1e-3 -> " +
                num(small, 6) + " (target 0.3755 +/- 1%); exponential Euler -> " +
                num(etd, 10) + " (target " + num(target, 10) +
                " +/- 1e-8; five-digit rounding 1.04540e-3 differs by " +
                num(std::abs(etd - 1.04540e-3)) + ")"};
}

// ---------------------------------------------------------------------------
// 4. Stability machinery: RK4 negative real-axis boundary, A-stability
//    sampling for exponential Euler, and agreement between raster membership
//    and actual integrator behavior on straddling (h, lambda) pairs.
// ---------------------------------------------------------------------------
CriterionResult stability_checks() {
    const auto rk4_boundary = exprk::real_axis_boundary(Method::Rk4);
    if (!rk4_boundary) return {false, "rk4 real-axis boundary not found"};
    const double magnitude = std::abs(*rk4_boundary);
    const bool boundary_ok = std::abs(magnitude - 2.78529) <= 1e-4;

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(-100.0, -1e-9);
    std::uniform_real_distribution<double> im(-100.0, 100.0);
    int unstable = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::complex<double> z(re(rng), im(rng));
        if (std::abs(exprk::stability_function(Method::EtdEuler, z)) >= 1.0) ++unstable;
    }

    int mismatches = 0;
    int pairs = 0;
    for (Method method : {Method::Rk2, Method::Rk4}) {
        const double boundary = *exprk::real_axis_boundary(method);
        for (double factor : {0.9, 1.2}) {
            for (double lambda : {-0.5, -1.0, -2.0, -4.0, -8.0}) {
                ++pairs;
                const double z = factor * boundary;
                const bool inside = factor < 1.0;

                const exprk::StabilityWindow window{z - 0.25, z + 0.25, -0.25, 0.25};
                const bool member = exprk::rasterize(method, window, 1, 1).at(0, 0);

                exprk::GeneralProblem p;
                p.rhs = [lambda](double, const Vector& u) { return Vector{lambda * u[0]}; };
                p.t0 = 0.0;
                const double h = z / lambda;
                p.tf = 200.0 * h;
                p.u0 = {1.0};
                const auto traj = exprk::integrate(p, method, h);
                const double end = std::abs(traj.states.back()[0]);
                const bool decayed = traj.finite && end < 1.0;
                const bool exploded = !traj.finite || end > 1e10;

                const bool agrees = inside ? (member && decayed) : (!member && exploded);
                if (!agrees) ++mismatches;
            }
        }
    }

    const bool pass = boundary_ok && unstable == 0 && mismatches == 0;
    return {pass, "rk4 boundary magnitude " + num(magnitude, 7) +
                      " (target 2.78529 +/- 1e-4); " + std::to_string(unstable) +
                      "/10000 left-half-plane samples unstable; " +
                      std::to_string(pairs - mismatches) + "/" + std::to_string(pairs) +
                      " straddling pairs agree with the raster"};
}

// ---------------------------------------------------------------------------
// 5. Forced-decay error table. Target levels come from the benchmark table
//    this harness reproduces; the midpoint blow-up cells must exceed 1e10
//    and the remaining cells must land within a factor 3.
// ---------------------------------------------------------------------------
const exprk::SweepRecord& find_record(const std::vector<exprk::SweepRecord>& recs,
                                      Method method, double h) {
    for (const auto& rec : recs) {
        if (rec.method == method && rec.h == h) return rec;
    }
    throw std::logic_error("sweep record missing");
}

CriterionResult forced_decay_table() {
    exprk::SweepConfig config;
    config.problem = "cm1d";
    config.methods = {Method::Rk2, Method::ExpRk2, Method::Rb2};
    config.step_sizes = {1e-1, 5e-2, 1e-2, 5e-3, 1e-3, 5e-4, 1e-4};
    config.repetitions = 1;
    const auto recs = exprk::run_sweep(config);

    struct Cell {
        Method method;
        double h;
        double tabled;
    };
    const Cell cells[] = {
        {Method::ExpRk2, 1e-1, 5.3437e-4}, {Method::ExpRk2, 1e-2, 1.6478e-5},
        {Method::ExpRk2, 1e-3, 1.9327e-6}, {Method::Rb2, 1e-1, 1.5318e-1},
        {Method::Rb2, 1e-2, 6.2265e-5},    {Method::Rb2, 1e-3, 2.8822e-6},
        {Method::Rk2, 1e-3, 1.8844e-6},    {Method::Rk2, 5e-4, 1.9839e-6},
        {Method::Rk2, 1e-4, 3.5469e-8},
    };

    std::ostringstream bad;
    int out_of_range = 0;
    for (const Cell& cell : cells) {
        const auto& rec = find_record(recs, cell.method, cell.h);
        const double ratio = rec.rel_error / cell.tabled;
        if (!rec.finite || ratio < 1.0 / 3.0 || ratio > 3.0) {
            ++out_of_range;
            bad << (out_of_range > 1 ? ", " : "") << exprk::method_name(cell.method) << "@"
                << num(cell.h, 1) << " ratio " << num(ratio);
        }
    }

    bool blowups_ok = true;
    double worst_blowup = 1e300;
    for (double h : {5e-2, 1e-1}) {
        const auto& rec = find_record(recs, Method::Rk2, h);
        worst_blowup = std::min(worst_blowup, rec.rel_error);
        if (!(rec.rel_error > 1e10)) blowups_ok = false;
    }

    std::string detail = "midpoint blow-up cells reach " + num(worst_blowup) + " (> 1e10)";
    if (out_of_range > 0) {
        detail += "; " + std::to_string(out_of_range) +
                  " of 9 factor-3 cells out of range: " + bad.str() +
                  " -- the computed errors sit well below the tabled levels";
    } else {
        detail += "; all 9 factor-3 cells in range";
    }
    return {blowups_ok && out_of_range == 0, detail};
}

// ---------------------------------------------------------------------------
// 6. Cubic-oscillator table, property form: midpoint overflows for coarse
//    steps, both stiff-capable methods stay finite everywhere, the two-stage
//    exponential method wins at h = 5e-4, and the reference trajectory
//    conserves the oscillator energy.
// ---------------------------------------------------------------------------
CriterionResult cubic_oscillator_table() {
    exprk::SweepConfig config;
    config.problem = "duffing";
    config.methods = {Method::Rk2, Method::ExpRk2, Method::Rb2};
    config.step_sizes = {1e-1, 5e-2, 1e-2, 5e-3, 1e-3, 5e-4, 1e-4};
    config.repetitions = 1;
    const auto recs = exprk::run_sweep(config);

    bool midpoint_overflows = true;
    for (double h : {5e-2, 1e-1}) {
        if (find_record(recs, Method::Rk2, h).finite) midpoint_overflows = false;
    }
    bool stiff_finite = true;
    for (Method method : {Method::ExpRk2, Method::Rb2}) {
        for (double h : config.step_sizes) {
            if (!find_record(recs, method, h).finite) stiff_finite = false;
        }
    }

    const double rk2 = find_record(recs, Method::Rk2, 5e-4).rel_error;
    const double exprk2 = find_record(recs, Method::ExpRk2, 5e-4).rel_error;
    const double rb2 = find_record(recs, Method::Rb2, 5e-4).rel_error;
    const bool ordering = exprk2 < rk2 && exprk2 < rb2;

    const auto spec = exprk::make_problem("duffing");
    const Vector ref = exprk::reference_solution(spec, spec.general.tf);
    const double e0 = exprk::duffing_energy(spec.general.u0, 1.0, 100.0);
    const double drift = std::abs(exprk::duffing_energy(ref, 1.0, 100.0) - e0) / e0;

    const bool pass = midpoint_overflows && stiff_finite && ordering && drift <= 1e-6;
    return {pass, std::string("midpoint non-finite at h >= 5e-2: ") +
                      (midpoint_overflows ? "yes" : "NO") +
                      "; exponential/Rosenbrock finite everywhere: " +
                      (stiff_finite ? "yes" : "NO") + "; h=5e-4 errors exprk2 " +
                      num(exprk2) + " < rk2 " + num(rk2) + ", rb2 " + num(rb2) +
                      (ordering ? "" : " (ORDERING VIOLATED)") +
                      "; reference energy drift " + num(drift) + " (tol 1e-6)"};
}

// ---------------------------------------------------------------------------
// 7. Convergence orders on the smooth non-stiff probe u' = -u + cos t,
//    u(0) = 1, over one time unit, fitted across dyadic steps 2^-4..2^-10.
// ---------------------------------------------------------------------------
double fitted_slope(const std::vector<double>& hs, const std::vector<double>& errs) {
    const std::size_t n = hs.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log2(hs[i]);
        y[i] = std::log2(errs[i]);
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

CriterionResult convergence_orders() {
    const double exact_end = 0.87482636592373927282;

    exprk::SemilinearProblem semi;
    semi.A = DenseMatrix(1, 1);
    semi.A(0, 0) = -1.0;
    semi.g = [](double t, const Vector&) { return Vector{std::cos(t)}; };
    semi.t0 = 0.0;
    semi.tf = 1.0;
    semi.u0 = {1.0};

    exprk::GeneralProblem gen;
    gen.rhs = [](double t, const Vector& u) { return Vector{-u[0] + std::cos(t)}; };
    gen.jacobian = [](double, const Vector&) {
        DenseMatrix J(1, 1);
        J(0, 0) = -1.0;
        return J;
    };
    gen.t0 = 0.0;
    gen.tf = 1.0;
    gen.u0 = {1.0};

    std::vector<double> hs;
    for (int p = 4; p <= 10; ++p) hs.push_back(std::ldexp(1.0, -p));

    const auto slope_for = [&](Method method) {
        std::vector<double> errs;
        for (double h : hs) {
            const auto traj = exprk::is_exponential(method) ? exprk::integrate(semi, method, h)
                                                            : exprk::integrate(gen, method, h);
            errs.push_back(std::abs(traj.states.back()[0] - exact_end));
        }
        return fitted_slope(hs, errs);
    };

    const double etd = slope_for(Method::EtdEuler);
    const double exprk2 = slope_for(Method::ExpRk2);
    const double rk2 = slope_for(Method::Rk2);
    const double rb2 = slope_for(Method::Rb2);

    const bool pass = std::abs(etd - 1.0) <= 0.1 && std::abs(exprk2 - 2.0) <= 0.2 &&
                      std::abs(rk2 - 2.0) <= 0.2 && std::abs(rb2 - 2.0) <= 0.2;
    return {pass, "slopes: etd-euler " + num(etd, 4) + " (target 1.0 +/- 0.1), exprk2 " +
                      num(exprk2, 4) + ", rk2 " + num(rk2, 4) + ", rb2 " + num(rb2, 4) +
                      " (target 2.0 +/- 0.2 each; the one-stage Rosenbrock carries no " +
                      "time-derivative correction, so it drops to first order on this " +
                      "time-dependent forcing)"};
}

// ---------------------------------------------------------------------------
// 8. Contractivity: with lambda < 0 and a nonlinearity whose Lipschitz
//    constant stays below |lambda|, one exponential Euler step never expands
//    the distance between two states, for tiny through enormous h.
// ---------------------------------------------------------------------------
CriterionResult contractivity() {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> log_lambda(std::log(1e-2), std::log(1e4));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> position(-3.0, 3.0);

    int violations = 0;
    int steps = 0;
    double worst_ratio = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double lambda = -std::exp(log_lambda(rng));
        const double lip = unit(rng) * (-lambda);  // lambda + lip <= 0
        const double a = position(rng);
        const double b = a + 0.1 + unit(rng);

        exprk::SemilinearProblem p;
        p.A = DenseMatrix(1, 1);
        p.A(0, 0) = lambda;
        p.g = [lip](double, const Vector& u) { return Vector{lip * std::sin(u[0])}; };
        p.u0 = {a};

        for (double h : {1e-3, 1.0, 1e3}) {
            const auto props = exprk::make_propagators(p.A, h);
            const double ua = exprk::step_etd_euler(p, props, 0.0, {a})[0];
            const double ub = exprk::step_etd_euler(p, props, 0.0, {b})[0];
            const double ratio = std::abs(ua - ub) / (b - a);
            worst_ratio = std::max(worst_ratio, ratio);
            ++steps;
            if (ratio > 1.0 + 1e-13) ++violations;
        }
    }

    return {violations == 0, std::to_string(violations) + " of " + std::to_string(steps) +
                                 " steps expanded; worst contraction ratio " +
                                 num(worst_ratio, 6)};
}

// ---------------------------------------------------------------------------
// 9. Timing policy: wall times are measured and reported so runs can be
//    compared locally, but no assertion ever touches them.
// ---------------------------------------------------------------------------
CriterionResult timing_policy() {
    exprk::SweepConfig config;
    config.problem = "cm1d";
    config.methods = {Method::ExpRk2};
    config.step_sizes = {1e-2};
    config.repetitions = 3;
    const auto recs = exprk::run_sweep(config);
    return {true, "median wall time exprk2@1e-2 = " + num(recs[0].wall_time_s) +
                      " s -- reported for context, never asserted"};
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* label;
        CriterionResult (*fn)();
        double budget_s;  // 0 = no runtime bound
    };
    const Entry entries[] = {
        {1, "phi identities", &phi_identities, 1.0},
        {2, "kernel oracles", &kernel_oracles, 5.0},
        {3, "stiff scalar walk-through", &stiff_walk_through, 0.0},
        {4, "stability boundary and membership", &stability_checks, 2.0},
        {5, "forced-decay error table", &forced_decay_table, 30.0},
        {6, "cubic-oscillator error table", &cubic_oscillator_table, 60.0},
        {7, "convergence orders", &convergence_orders, 0.0},
        {8, "contractivity", &contractivity, 0.0},
        {9, "timing policy", &timing_policy, 0.0},
    };

    int failures = 0;
    for (const Entry& entry : entries) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = entry.fn();
        } catch (const std::exception& e) {
            result = {false, std::string("unexpected exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (result.pass && entry.budget_s > 0.0 && elapsed > entry.budget_s) {
            result.pass = false;
            result.detail += "; exceeded " + num(entry.budget_s, 2) + " s runtime budget";
        }
        std::printf("criterion %d [%s]: %s (%.2f s) -- %s\n", entry.id, entry.label,
                    result.pass ? "PASS" : "FAIL", elapsed, result.detail.c_str());
        if (!result.pass) ++failures;
    }
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}
