#include "exprk/integrators.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "exprk/errors.hpp"
#include "exprk/matfun.hpp"

namespace exprk {

namespace {

Vector axpy(double a, const Vector& x, const Vector& y) {
    Vector out(y);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += a * x[i];
    return out;
}

// Solve M x = b by LU with partial pivoting. The pivot ratio is a cheap
// stand-in for a condition number; it is reported when the solve fails.
Vector solve_dense(DenseMatrix M, Vector b) {
    const std::size_t n = M.rows();
    double pivot_max = 0.0;
    double pivot_min = std::numeric_limits<double>::infinity();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(M(r, col)) > std::abs(M(pivot_row, col))) pivot_row = r;
        }
        const double pivot = M(pivot_row, col);
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw StepFailure("rb2: singular stage matrix (pivot ratio "
                              + std::to_string(pivot_max / (pivot_min == 0.0 ? 1.0 : pivot_min))
                              + ")",
                              std::numeric_limits<double>::infinity());
        }
        if (pivot_row != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(M(col, j), M(pivot_row, j));
            std::swap(b[col], b[pivot_row]);
        }
        pivot_max = std::max(pivot_max, std::abs(pivot));
        pivot_min = std::min(pivot_min, std::abs(pivot));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = M(r, col) / pivot;
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) M(r, j) -= factor * M(col, j);
            b[r] -= factor * b[col];
        }
    }
    Vector x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= M(i, j) * x[j];
        x[i] = acc / M(i, i);
    }
    return x;
}

long step_count(double t0, double tf, double h) {
    // The 1e-9 slack keeps ratios like 0.1/0.001 (stored as 99.999...) from
    // rounding up to an extra, essentially zero-length step.
    return std::max<long>(1, static_cast<long>(std::ceil((tf - t0) / h - 1e-9)));
}

void validate_span(double t0, double tf, double h, const char* who) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument(std::string(who) + ": step size must be positive");
    }
    if (!(tf > t0)) {
        throw std::invalid_argument(std::string(who) + ": need tf > t0");
    }
    if (h > (tf - t0) * (1.0 + 1e-12)) {
        throw std::invalid_argument(std::string(who) + ": step size exceeds the time span");
    }
}

}  // namespace

Method parse_method(const std::string& name) {
    if (name == "etd-euler") return Method::EtdEuler;
    if (name == "exprk2") return Method::ExpRk2;
    if (name == "rk2") return Method::Rk2;
    if (name == "rk4") return Method::Rk4;
    if (name == "rb2") return Method::Rb2;
    throw std::invalid_argument("unknown method '" + name
                                + "' (expected etd-euler|exprk2|rk2|rk4|rb2)");
}

std::string method_name(Method method) {
    switch (method) {
        case Method::EtdEuler: return "etd-euler";
        case Method::ExpRk2: return "exprk2";
        case Method::Rk2: return "rk2";
        case Method::Rk4: return "rk4";
        case Method::Rb2: return "rb2";
    }
    throw std::invalid_argument("method_name: unknown method");
}

bool is_exponential(Method method) {
    return method == Method::EtdEuler || method == Method::ExpRk2;
}

PrecomputedPropagators make_propagators(const DenseMatrix& A, double h) {
    PhiTable table = make_phi_table(A, h, 2);
    return {h, std::move(table.mats[0]), std::move(table.mats[1]), std::move(table.mats[2])};
}

Vector step_etd_euler(const SemilinearProblem& p, const PrecomputedPropagators& props,
                      double t, const Vector& u) {
    const Vector gu = p.g(t, u);
    return axpy(props.h, props.phi1_hA * gu, props.exp_hA * u);
}

Vector step_exprk2(const SemilinearProblem& p, const PrecomputedPropagators& props,
                   double t, const Vector& u) {
    const Vector gu = p.g(t, u);
    const Vector a = axpy(props.h, props.phi1_hA * gu, props.exp_hA * u);
    const Vector ga = p.g(t + props.h, a);
    Vector diff(ga);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= gu[i];
    return axpy(props.h, props.phi2_hA * diff, a);
}

Vector step_rk2(const GeneralProblem& p, double t, const Vector& u, double h) {
    const Vector k1 = p.rhs(t, u);
    const Vector k2 = p.rhs(t + 0.5 * h, axpy(0.5 * h, k1, u));
    return axpy(h, k2, u);
}

Vector step_rk4(const GeneralProblem& p, double t, const Vector& u, double h) {
    const Vector k1 = p.rhs(t, u);
    const Vector k2 = p.rhs(t + 0.5 * h, axpy(0.5 * h, k1, u));
    const Vector k3 = p.rhs(t + 0.5 * h, axpy(0.5 * h, k2, u));
    const Vector k4 = p.rhs(t + h, axpy(h, k3, u));
    Vector out(u);
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

Vector step_rb2(const GeneralProblem& p, double t, const Vector& u, double h, double gamma) {
    const DenseMatrix J = p.jacobian ? p.jacobian(t, u)
                                     : finite_difference_jacobian(p.rhs, t, u);
    const std::size_t n = u.size();
    DenseMatrix M = DenseMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) -= gamma * h * J(i, j);
    const Vector k = solve_dense(std::move(M), p.rhs(t, u));
    return axpy(h, k, u);
}

DenseMatrix finite_difference_jacobian(const std::function<Vector(double, const Vector&)>& F,
                                       double t, const Vector& u) {
    const std::size_t n = u.size();
    const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    DenseMatrix J(n, n);
    Vector up(u), um(u);
    for (std::size_t j = 0; j < n; ++j) {
        const double delta = sqrt_eps * std::max(1.0, std::abs(u[j]));
        up[j] = u[j] + delta;
        um[j] = u[j] - delta;
        const Vector fp = F(t, up);
        const Vector fm = F(t, um);
        if (fp.size() != n || fm.size() != n) {
            throw std::invalid_argument("finite_difference_jacobian: F must map R^n to R^n");
        }
        for (std::size_t i = 0; i < n; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * delta);
        up[j] = u[j];
        um[j] = u[j];
    }
    if (!J.is_finite()) {
        throw std::domain_error("finite_difference_jacobian: non-finite difference quotient");
    }
    return J;
}

Trajectory integrate(const SemilinearProblem& p, Method method, double h) {
    if (!is_exponential(method)) {
        throw std::invalid_argument("integrate: " + method_name(method)
                                    + " takes the general-form overload");
    }
    validate_span(p.t0, p.tf, h, "integrate");
    if (p.u0.empty() || p.A.rows() != p.u0.size()) {
        throw std::invalid_argument("integrate: initial state does not match A");
    }

    const auto clock_start = std::chrono::steady_clock::now();
    Trajectory traj;
    traj.method = method;
    traj.h = h;
    const PrecomputedPropagators props = make_propagators(p.A, h);
    std::optional<PrecomputedPropagators> short_props;

    const long n_steps = step_count(p.t0, p.tf, h);
    Vector u = p.u0;
    traj.times.push_back(p.t0);
    traj.states.push_back(u);
    for (long i = 0; i < n_steps; ++i) {
        const double t = p.t0 + static_cast<double>(i) * h;
        const double t_next = (i + 1 == n_steps) ? p.tf : p.t0 + static_cast<double>(i + 1) * h;
        const double hi = t_next - t;
        const PrecomputedPropagators* active = &props;
        if (std::abs(hi - h) > 1e-12 * h) {
            if (!short_props) short_props = make_propagators(p.A, hi);
            active = &*short_props;
        }
        u = (method == Method::EtdEuler) ? step_etd_euler(p, *active, t, u)
                                         : step_exprk2(p, *active, t, u);
        traj.times.push_back(t_next);
        traj.states.push_back(u);
        if (!is_finite(u)) {
            traj.finite = false;
            break;
        }
    }
    traj.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return traj;
}

Trajectory integrate(const GeneralProblem& p, Method method, double h, double gamma) {
    if (is_exponential(method)) {
        throw std::invalid_argument("integrate: " + method_name(method)
                                    + " takes the semilinear overload");
    }
    validate_span(p.t0, p.tf, h, "integrate");
    if (p.u0.empty()) throw std::invalid_argument("integrate: empty initial state");

    const auto clock_start = std::chrono::steady_clock::now();
    Trajectory traj;
    traj.method = method;
    traj.h = h;

    const long n_steps = step_count(p.t0, p.tf, h);
    Vector u = p.u0;
    traj.times.push_back(p.t0);
    traj.states.push_back(u);
    for (long i = 0; i < n_steps; ++i) {
        const double t = p.t0 + static_cast<double>(i) * h;
        const double t_next = (i + 1 == n_steps) ? p.tf : p.t0 + static_cast<double>(i + 1) * h;
        const double hi = t_next - t;
        switch (method) {
            case Method::Rk2: u = step_rk2(p, t, u, hi); break;
            case Method::Rk4: u = step_rk4(p, t, u, hi); break;
            case Method::Rb2: u = step_rb2(p, t, u, hi, gamma); break;
            default: throw std::invalid_argument("integrate: unsupported method");
        }
        traj.times.push_back(t_next);
        traj.states.push_back(u);
        if (!is_finite(u)) {
            traj.finite = false;
            break;
        }
    }
    traj.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return traj;
}

}  // namespace exprk
