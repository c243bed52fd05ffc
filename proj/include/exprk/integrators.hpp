#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exprk/matrix.hpp"

namespace exprk {

/// Time steppers offered by the driver.
enum class Method {
    EtdEuler,  ///< exponential Euler: u + = e^{hA} u + h phi_1(hA) g(t, u)
    ExpRk2,    ///< two-stage exponential RK with a phi_2 correction
    Rk2,       ///< explicit midpoint rule
    Rk4,       ///< the classical fourth-order scheme
    Rb2,       ///< linearly implicit Rosenbrock with one solve per step
};

/// Parses "etd-euler" | "exprk2" | "rk2" | "rk4" | "rb2".
Method parse_method(const std::string& name);
std::string method_name(Method method);

/// True for the steppers that consume the semilinear split u' = A u + g.
bool is_exponential(Method method);

/// Right-hand side in semilinear form u' = A u + g(t, u).
struct SemilinearProblem {
    DenseMatrix A;
    std::function<Vector(double, const Vector&)> g;
    double t0 = 0.0;
    double tf = 1.0;
    Vector u0;
};

/// Right-hand side in general form u' = F(t, u), with an optional analytic
/// Jacobian dF/du for the linearly implicit stepper.
struct GeneralProblem {
    std::function<Vector(double, const Vector&)> rhs;
    std::function<DenseMatrix(double, const Vector&)> jacobian;  // may be empty
    double t0 = 0.0;
    double tf = 1.0;
    Vector u0;
};

/// Matrix propagators shared by every full-size step: e^{hA}, phi_1(hA),
/// phi_2(hA). Built once per (A, h) pair.
struct PrecomputedPropagators {
    double h = 0.0;
    DenseMatrix exp_hA;
    DenseMatrix phi1_hA;
    DenseMatrix phi2_hA;
};

PrecomputedPropagators make_propagators(const DenseMatrix& A, double h);

/// One step of exponential Euler: u + = e^{hA} u + h phi_1(hA) g(t, u).
Vector step_etd_euler(const SemilinearProblem& p, const PrecomputedPropagators& props,
                      double t, const Vector& u);

/// One step of the two-stage exponential scheme:
///   a  = e^{hA} u + h phi_1(hA) g(t, u)
///   u+ = a + h phi_2(hA) (g(t + h, a) - g(t, u)).
Vector step_exprk2(const SemilinearProblem& p, const PrecomputedPropagators& props,
                   double t, const Vector& u);

/// Explicit midpoint step.
Vector step_rk2(const GeneralProblem& p, double t, const Vector& u, double h);

/// Classical RK4 step.
Vector step_rk4(const GeneralProblem& p, double t, const Vector& u, double h);

/// Linearly implicit Rosenbrock step with a single stage:
///   (I - gamma h J) k = F(t, u),   u+ = u + h k,
/// J the Jacobian at (t, u) (analytic when available, finite differences
/// otherwise). Throws StepFailure when the stage matrix is singular.
Vector step_rb2(const GeneralProblem& p, double t, const Vector& u, double h,
                double gamma = 0.5);

/// Central-difference Jacobian of F at (t, u), column j perturbed by
/// sqrt(eps) * max(1, |u_j|).
DenseMatrix finite_difference_jacobian(const std::function<Vector(double, const Vector&)>& F,
                                       double t, const Vector& u);

/// Integration record: node times, states at those nodes, and whether the
/// run stayed finite to the end. When a state goes non-finite it is kept as
/// the last entry and `finite` is false.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    Method method = Method::EtdEuler;
    double h = 0.0;
    double wall_time_s = 0.0;
    bool finite = true;
};

/// Fixed-step driver for the exponential methods. Takes ceil((tf - t0)/h)
/// steps (with a tiny tolerance so near-integer ratios are not bumped up),
/// shortening the last step to land exactly on tf; the shortened step gets
/// its own propagators. Wall time covers propagator construction too.
Trajectory integrate(const SemilinearProblem& p, Method method, double h);

/// Fixed-step driver for the classical/Rosenbrock methods; same stepping
/// policy. StepFailure from the implicit stage propagates to the caller.
Trajectory integrate(const GeneralProblem& p, Method method, double h, double gamma = 0.5);

}  // namespace exprk
