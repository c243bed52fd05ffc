#include "exprk/problems.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>

namespace exprk {

namespace {

double param_or(const ParamMap& overrides, const char* key, double fallback) {
    const auto it = overrides.find(key);
    return it == overrides.end() ? fallback : it->second;
}

void reject_unknown(const ParamMap& overrides, std::initializer_list<const char*> allowed,
                    const char* problem) {
    for (const auto& [key, value] : overrides) {
        bool ok = false;
        for (const char* name : allowed) {
            if (key == name) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw std::invalid_argument(std::string(problem) + ": unknown parameter '" + key
                                        + "'");
        }
        if (!std::isfinite(value)) {
            throw std::invalid_argument(std::string(problem) + ": parameter '" + key
                                        + "' must be finite");
        }
    }
}

std::mutex ref_mutex;
std::map<std::string, Vector>& ref_cache() {
    static std::map<std::string, Vector> cache;
    return cache;
}

std::string ref_key(const ProblemSpec& p, double t_eval) {
    char buf[96];
    std::string key = p.name;
    for (const auto& [name, value] : p.params) {  // std::map iterates sorted
        std::snprintf(buf, sizeof buf, "|%s=%.17g", name.c_str(), value);
        key += buf;
    }
    std::snprintf(buf, sizeof buf, "|t=%.17g", t_eval);
    key += buf;
    return key;
}

// Endpoint-only RK4 pass: fixed steps, shortened final step, no trajectory.
Vector rk4_endpoint(const GeneralProblem& p, double t_end, double h) {
    const long n = std::max<long>(1, static_cast<long>(std::ceil((t_end - p.t0) / h - 1e-9)));
    Vector u = p.u0;
    const std::size_t dim = u.size();
    Vector stage(dim);
    for (long i = 0; i < n; ++i) {
        const double t = p.t0 + static_cast<double>(i) * h;
        const double t_next = (i + 1 == n) ? t_end : p.t0 + static_cast<double>(i + 1) * h;
        const double hi = t_next - t;
        const Vector k1 = p.rhs(t, u);
        for (std::size_t j = 0; j < dim; ++j) stage[j] = u[j] + 0.5 * hi * k1[j];
        const Vector k2 = p.rhs(t + 0.5 * hi, stage);
        for (std::size_t j = 0; j < dim; ++j) stage[j] = u[j] + 0.5 * hi * k2[j];
        const Vector k3 = p.rhs(t + 0.5 * hi, stage);
        for (std::size_t j = 0; j < dim; ++j) stage[j] = u[j] + hi * k3[j];
        const Vector k4 = p.rhs(t + hi, stage);
        for (std::size_t j = 0; j < dim; ++j) {
            u[j] += (hi / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
    }
    if (!is_finite(u)) {
        throw std::runtime_error("reference_solution: integration went non-finite");
    }
    return u;
}

}  // namespace

ProblemSpec toy_model(const ParamMap& overrides) {
    reject_unknown(overrides, {"lambda", "t0", "tf", "u0"}, "toy");
    const double lambda = param_or(overrides, "lambda", -1000.0);
    const double t0 = param_or(overrides, "t0", 0.0);
    const double tf = param_or(overrides, "tf", 0.1);
    const double u0 = param_or(overrides, "u0", 1.0);

    ProblemSpec spec;
    spec.name = "toy";
    spec.params = {{"lambda", lambda}, {"t0", t0}, {"tf", tf}, {"u0", u0}};

    spec.semilinear.A = DenseMatrix::diagonal({lambda});
    spec.semilinear.g = [](double, const Vector& u) {
        return Vector{2.0 * u[0] / (1.0 + u[0] * u[0])};
    };
    spec.semilinear.t0 = t0;
    spec.semilinear.tf = tf;
    spec.semilinear.u0 = {u0};

    spec.general.rhs = [lambda](double, const Vector& u) {
        return Vector{lambda * u[0] + 2.0 * u[0] / (1.0 + u[0] * u[0])};
    };
    spec.general.jacobian = [lambda](double, const Vector& u) {
        const double s = 1.0 + u[0] * u[0];
        DenseMatrix J(1, 1);
        J(0, 0) = lambda + 2.0 * (1.0 - u[0] * u[0]) / (s * s);
        return J;
    };
    spec.general.t0 = t0;
    spec.general.tf = tf;
    spec.general.u0 = {u0};
    return spec;
}

ProblemSpec cm1d(const ParamMap& overrides) {
    reject_unknown(overrides, {"k", "t0", "tf", "u0"}, "cm1d");
    const double k = param_or(overrides, "k", -100.0);
    const double t0 = param_or(overrides, "t0", 0.0);
    const double tf = param_or(overrides, "tf", 1.5707963267948966);
    const double u0 = param_or(overrides, "u0", 1.0);

    ProblemSpec spec;
    spec.name = "cm1d";
    spec.params = {{"k", k}, {"t0", t0}, {"tf", tf}, {"u0", u0}};

    spec.semilinear.A = DenseMatrix::diagonal({k});
    spec.semilinear.g = [](double t, const Vector&) { return Vector{std::sin(t)}; };
    spec.semilinear.t0 = t0;
    spec.semilinear.tf = tf;
    spec.semilinear.u0 = {u0};

    spec.general.rhs = [k](double t, const Vector& u) {
        return Vector{k * u[0] + std::sin(t)};
    };
    spec.general.jacobian = [k](double, const Vector&) {
        DenseMatrix J(1, 1);
        J(0, 0) = k;
        return J;
    };
    spec.general.t0 = t0;
    spec.general.tf = tf;
    spec.general.u0 = {u0};

    // Closed form for u(0) = 1 on the default start time; parameter overrides
    // that change t0/u0 invalidate it, so only attach it when they match.
    if (t0 == 0.0 && u0 == 1.0) {
        spec.exact = [k](double t) {
            const double num =
                std::exp(k * t) * (2.0 + k * k) - k * std::sin(t) - std::cos(t);
            return Vector{num / (1.0 + k * k)};
        };
    }
    return spec;
}

ProblemSpec duffing(const ParamMap& overrides) {
    reject_unknown(overrides, {"omega", "k", "t0", "tf", "u0", "v0"}, "duffing");
    const double omega = param_or(overrides, "omega", 1.0);
    const double k = param_or(overrides, "k", 100.0);
    const double t0 = param_or(overrides, "t0", 0.0);
    const double tf = param_or(overrides, "tf", 10.0);
    const double u0 = param_or(overrides, "u0", 1.0);
    const double v0 = param_or(overrides, "v0", 0.0);

    ProblemSpec spec;
    spec.name = "duffing";
    spec.params = {{"omega", omega}, {"k", k}, {"t0", t0}, {"tf", tf}, {"u0", u0}, {"v0", v0}};

    spec.semilinear.A = DenseMatrix(2, 2);
    spec.semilinear.A(0, 1) = 1.0;
    spec.semilinear.A(1, 0) = -omega;
    spec.semilinear.g = [k](double, const Vector& u) {
        return Vector{0.0, -k * (u[0] * u[0] * u[0])};
    };
    spec.semilinear.t0 = t0;
    spec.semilinear.tf = tf;
    spec.semilinear.u0 = {u0, v0};

    spec.general.rhs = [omega, k](double, const Vector& u) {
        return Vector{u[1], -omega * u[0] - k * (u[0] * u[0] * u[0])};
    };
    spec.general.jacobian = [omega, k](double, const Vector& u) {
        DenseMatrix J(2, 2);
        J(0, 1) = 1.0;
        J(1, 0) = -omega - 3.0 * k * u[0] * u[0];
        return J;
    };
    spec.general.t0 = t0;
    spec.general.tf = tf;
    spec.general.u0 = {u0, v0};
    return spec;
}

ProblemSpec make_problem(const std::string& name, const ParamMap& overrides) {
    if (name == "toy") return toy_model(overrides);
    if (name == "cm1d") return cm1d(overrides);
    if (name == "duffing") return duffing(overrides);
    throw std::invalid_argument("unknown problem '" + name + "' (expected toy|cm1d|duffing)");
}

double duffing_energy(const Vector& state, double omega, double k) {
    if (state.size() != 2) throw std::invalid_argument("duffing_energy: want a 2-vector");
    const double u = state[0];
    const double v = state[1];
    return 0.5 * v * v + 0.5 * omega * u * u + 0.25 * k * u * u * u * u;
}

Vector reference_solution(const ProblemSpec& p, double t_eval) {
    const double t0 = p.general.t0;
    const double tf = p.general.tf;
    if (!std::isfinite(t_eval) || t_eval < t0 || t_eval > tf + 1e-12) {
        throw std::invalid_argument("reference_solution: t_eval outside [t0, tf]");
    }
    if (t_eval <= t0) return p.general.u0;

    const std::string key = ref_key(p, t_eval);
    {
        std::lock_guard<std::mutex> lock(ref_mutex);
        const auto it = ref_cache().find(key);
        if (it != ref_cache().end()) return it->second;
    }

    constexpr double h_ref = 1e-6;
    const Vector coarse = rk4_endpoint(p.general, t_eval, h_ref);
    const Vector fine = rk4_endpoint(p.general, t_eval, 0.5 * h_ref);

    // Step-halving disagreement, relative where the component has scale.
    double worst = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
        const double diff = std::abs(fine[i] - coarse[i]);
        const double scale = std::abs(fine[i]);
        worst = std::max(worst, scale > 1e-14 ? diff / scale : diff);
    }
    if (!(worst <= 1e-8)) {
        throw std::runtime_error("reference_solution: step-halving check failed (disagreement "
                                 + std::to_string(worst) + ")");
    }

    std::lock_guard<std::mutex> lock(ref_mutex);
    ref_cache().emplace(key, fine);
    return fine;
}

}  // namespace exprk
