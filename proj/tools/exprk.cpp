#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "exprk/errors.hpp"
#include "exprk/harness.hpp"
#include "exprk/phi.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream stream(text);
    while (std::getline(stream, part, ',')) parts.push_back(part);
    return parts;
}

std::vector<double> parse_doubles(const std::string& text, std::size_t expect,
                                  const std::string& what) {
    const std::vector<std::string> parts = split_list(text);
    if (expect != 0 && parts.size() != expect) {
        throw std::invalid_argument(what + ": expected " + std::to_string(expect)
                                    + " comma-separated values, got '" + text + "'");
    }
    std::vector<double> values;
    for (const std::string& part : parts) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(what + ": '" + part + "' is not a number");
        }
        if (used != part.size()) {
            throw std::invalid_argument(what + ": '" + part + "' is not a number");
        }
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument(what + ": empty list");
    return values;
}

exprk::ParamMap parse_params(const std::vector<std::string>& pairs) {
    exprk::ParamMap params;
    for (const std::string& pair : pairs) {
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("--param expects key=value, got '" + pair + "'");
        }
        params[pair.substr(0, eq)] = std::stod(pair.substr(eq + 1));
    }
    return params;
}

exprk::PhiStrategy parse_strategy(const std::string& tag) {
    if (tag == "auto") return exprk::PhiStrategy::Auto;
    if (tag == "recursion") return exprk::PhiStrategy::Recursion;
    if (tag == "taylor") return exprk::PhiStrategy::TaylorSeries;
    if (tag == "contour") return exprk::PhiStrategy::ContourTrapezoid;
    throw std::invalid_argument("unknown strategy '" + tag
                                + "' (expected auto|recursion|taylor|contour)");
}

void write_trajectory_csv(const exprk::Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("integrate: cannot open '" + path + "'");
    const std::size_t dim = traj.states.empty() ? 0 : traj.states.front().size();
    out << "t";
    for (std::size_t j = 0; j < dim; ++j) out << ",u" << j;
    out << '\n';
    char buf[40];
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[i]);
        out << buf;
        for (double v : traj.states[i]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("integrate: write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential-integrator workbench: benchmark sweeps, stability rasters, "
                 "trajectory runs, and scalar phi probes"};
    app.require_subcommand(1);

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "run a (method x step-size) error/timing sweep");
    std::string sw_problem, sw_methods, sw_steps, sw_out = "sweep.csv";
    std::vector<std::string> sw_params;
    int sw_reps = 5, sw_seed = 0;
    double sw_gamma = 0.5;
    sweep->add_option("--problem", sw_problem, "problem name (toy|cm1d|duffing)")->required();
    sweep->add_option("--methods", sw_methods, "comma list of methods")->required();
    sweep->add_option("--steps", sw_steps, "comma list of step sizes")->required();
    sweep->add_option("--out", sw_out, "output CSV path");
    sweep->add_option("--reps", sw_reps, "timing repetitions (median is reported)");
    sweep->add_option("--seed", sw_seed, "recorded RNG seed");
    sweep->add_option("--gamma", sw_gamma, "Rosenbrock stage parameter");
    sweep->add_option("--param", sw_params, "problem parameter override key=value")
        ->take_all();

    // --- stability ---
    auto* stab = app.add_subcommand("stability", "rasterize a stability region");
    std::string st_method, st_window = "-5,1,-3,3", st_res = "400,300", st_format = "pgm";
    std::string st_out;
    double st_gamma = 0.5;
    stab->add_option("--method", st_method, "method tag")->required();
    stab->add_option("--window", st_window, "re_min,re_max,im_min,im_max");
    stab->add_option("--res", st_res, "nx,ny");
    stab->add_option("--format", st_format, "pgm|csv");
    stab->add_option("--out", st_out, "output path")->required();
    stab->add_option("--gamma", st_gamma, "Rosenbrock stage parameter");

    // --- integrate ---
    auto* run = app.add_subcommand("integrate", "integrate one problem with one method");
    // free the short -h so the step-size option can be spelled --h
    run->set_help_flag("--help", "print this help message and exit");
    std::string in_problem, in_method, in_out;
    double in_h = 0.0, in_gamma = 0.5;
    std::vector<std::string> in_params;
    run->add_option("--problem", in_problem, "problem name (toy|cm1d|duffing)")->required();
    run->add_option("--method", in_method, "method tag")->required();
    run->add_option("--h", in_h, "step size")->required();
    run->add_option("--out", in_out, "trajectory CSV path (optional)");
    run->add_option("--gamma", in_gamma, "Rosenbrock stage parameter");
    run->add_option("--param", in_params, "problem parameter override key=value")->take_all();

    // --- phi ---
    auto* phi = app.add_subcommand("phi", "evaluate a scalar phi function");
    int ph_k = 0;
    std::string ph_z, ph_strategy = "auto";
    phi->add_option("--k", ph_k, "order (0..8)")->required();
    phi->add_option("--z", ph_z, "argument re or re,im")->required();
    phi->add_option("--strategy", ph_strategy, "auto|recursion|taylor|contour");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help and --version are successes
    }

    try {
        if (sweep->parsed()) {
            exprk::SweepConfig config;
            config.problem = sw_problem;
            config.params = parse_params(sw_params);
            for (const std::string& tag : split_list(sw_methods)) {
                config.methods.push_back(exprk::parse_method(tag));
            }
            config.step_sizes = parse_doubles(sw_steps, 0, "--steps");
            config.repetitions = sw_reps;
            config.seed = sw_seed;
            config.gamma = sw_gamma;
            const auto records = exprk::run_sweep(config);
            exprk::emit_csv(records, sw_out);
            std::cout << "wrote " << records.size() << " rows to " << sw_out << '\n';
            return 0;
        }
        if (stab->parsed()) {
            const exprk::Method method = exprk::parse_method(st_method);
            const std::vector<double> w = parse_doubles(st_window, 4, "--window");
            const std::vector<double> r = parse_doubles(st_res, 2, "--res");
            if (r[0] < 1.0 || r[1] < 1.0 || r[0] != std::floor(r[0]) || r[1] != std::floor(r[1])) {
                throw std::invalid_argument("--res wants two positive integers");
            }
            exprk::RasterFormat format;
            if (st_format == "pgm") {
                format = exprk::RasterFormat::Pgm;
            } else if (st_format == "csv") {
                format = exprk::RasterFormat::Csv;
            } else {
                throw std::invalid_argument("--format must be pgm or csv");
            }
            const exprk::StabilityWindow window{w[0], w[1], w[2], w[3]};
            const auto raster = exprk::rasterize(method, window,
                                                 static_cast<std::size_t>(r[0]),
                                                 static_cast<std::size_t>(r[1]), st_gamma);
            exprk::emit_raster(raster, st_out, format);
            std::cout << "wrote " << raster.nx << "x" << raster.ny << " raster to " << st_out
                      << '\n';
            if (const auto boundary = exprk::real_axis_boundary(method, st_gamma)) {
                std::printf("real-axis stability boundary: %.8f\n", *boundary);
            } else {
                std::cout << "stable on the whole negative real axis\n";
            }
            return 0;
        }
        if (run->parsed()) {
            const exprk::Method method = exprk::parse_method(in_method);
            const exprk::ProblemSpec prob =
                exprk::make_problem(in_problem, parse_params(in_params));
            exprk::Trajectory traj;
            try {
                traj = exprk::is_exponential(method)
                           ? exprk::integrate(prob.semilinear, method, in_h)
                           : exprk::integrate(prob.general, method, in_h, in_gamma);
            } catch (const exprk::StepFailure& e) {
                std::cerr << "integration failed: " << e.what() << '\n';
                return 3;
            } catch (const exprk::NonFiniteError& e) {
                std::cerr << "integration failed: " << e.what() << '\n';
                return 3;
            }
            if (!in_out.empty()) write_trajectory_csv(traj, in_out);
            const exprk::Vector& last = traj.states.back();
            std::printf("t = %.17g, state =", traj.times.back());
            for (double v : last) std::printf(" %.17g", v);
            std::printf("\nwall time: %.3e s\n", traj.wall_time_s);
            if (!traj.finite) {
                std::cerr << "state left finite arithmetic before tf\n";
                return 3;
            }
            return 0;
        }
        if (phi->parsed()) {
            const std::vector<double> zv = parse_doubles(ph_z, 0, "--z");
            if (zv.size() > 2) throw std::invalid_argument("--z wants re or re,im");
            const std::complex<double> z(zv[0], zv.size() == 2 ? zv[1] : 0.0);
            const std::complex<double> value =
                exprk::phi_scalar(ph_k, z, parse_strategy(ph_strategy));
            if (value.imag() == 0.0) {
                std::printf("%.16e\n", value.real());
            } else {
                std::printf("%.16e %+.16ei\n", value.real(), value.imag());
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
