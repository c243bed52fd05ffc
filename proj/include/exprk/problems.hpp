#pragma once

#include <functional>
#include <map>
#include <string>

#include "exprk/integrators.hpp"

namespace exprk {

/// A benchmark problem carried in both right-hand-side forms, plus the
/// closed-form solution when one exists. `params` records the resolved
/// parameter values after overrides.
struct ProblemSpec {
    std::string name;
    std::map<std::string, double> params;
    SemilinearProblem semilinear;
    GeneralProblem general;
    std::function<Vector(double)> exact;  // empty when no closed form
};

using ParamMap = std::map<std::string, double>;

/// Stiff scalar model u' = lambda u + 2u/(1 + u^2), u(0) = 1 on [0, 0.1],
/// lambda = -1000. Overridable: lambda, t0, tf, u0.
ProblemSpec toy_model(const ParamMap& overrides = {});

/// Scalar forced decay u' = k u + sin t, u(0) = 1 on [0, pi/2], k = -100.
/// Has a closed-form solution. Overridable: k, t0, tf, u0.
ProblemSpec cm1d(const ParamMap& overrides = {});

/// Unforced Duffing oscillator u'' + omega u + k u^3 = 0 as a first-order
/// system (u, v), u(0) = 1, v(0) = 0 on [0, 10], omega = 1, k = 100.
/// Conserves the energy below. Overridable: omega, k, t0, tf, u0, v0.
ProblemSpec duffing(const ParamMap& overrides = {});

/// Factory by CLI name: "toy" | "cm1d" | "duffing".
ProblemSpec make_problem(const std::string& name, const ParamMap& overrides = {});

/// Duffing invariant E = v^2/2 + omega u^2/2 + k u^4/4.
double duffing_energy(const Vector& state, double omega, double k);

/// High-accuracy state at t_eval: a lean fixed-step RK4 pass at h = 1e-6,
/// cross-checked against a half-step pass (the two must agree to 1e-8 in
/// each component, else this throws). Results are cached per
/// (problem, params, t_eval); safe to call concurrently.
Vector reference_solution(const ProblemSpec& p, double t_eval);

}  // namespace exprk
