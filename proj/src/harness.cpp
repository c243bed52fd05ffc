#include "exprk/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "exprk/errors.hpp"

namespace exprk {

namespace {

constexpr double kZeroReference = 1e-14;

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::ofstream open_for_write(const std::string& path, const char* who) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(std::string(who) + ": cannot open '" + path + "'");
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

}  // namespace

double relative_error(const Vector& approx, const Vector& reference) {
    if (approx.size() != reference.size()) {
        throw std::invalid_argument("relative_error: length mismatch");
    }
    if (approx.empty()) throw std::invalid_argument("relative_error: empty vectors");
    bool any_scale = false;
    for (double r : reference) {
        if (std::abs(r) > kZeroReference) {
            any_scale = true;
            break;
        }
    }
    if (!any_scale) {
        throw std::domain_error("relative_error: reference is numerically zero in every "
                                "component; relative comparison is meaningless");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i) {
        const double diff = std::abs(approx[i] - reference[i]);
        const double scale = std::abs(reference[i]);
        const double err = scale > kZeroReference ? diff / scale : diff;
        if (std::isnan(err)) return std::numeric_limits<double>::quiet_NaN();
        worst = std::max(worst, err);
    }
    return worst;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    if (config.repetitions < 1) {
        throw std::invalid_argument("run_sweep: repetitions must be >= 1");
    }
    if (config.methods.empty() || config.step_sizes.empty()) {
        throw std::invalid_argument("run_sweep: need at least one method and one step size");
    }
    for (double h : config.step_sizes) {
        if (!(h > 0.0) || !std::isfinite(h)) {
            throw std::invalid_argument("run_sweep: step sizes must be positive");
        }
    }
    const ProblemSpec prob = make_problem(config.problem, config.params);

    std::vector<double> steps = config.step_sizes;
    std::sort(steps.begin(), steps.end(), std::greater<>());

    const double tf = prob.general.tf;
    const Vector ref = prob.exact ? prob.exact(tf) : reference_solution(prob, tf);

    std::vector<SweepRecord> records;
    records.reserve(config.methods.size() * steps.size());
    for (Method method : config.methods) {
        for (double h : steps) {
            SweepRecord rec;
            rec.method = method;
            rec.h = h;
            rec.rel_error = std::numeric_limits<double>::quiet_NaN();
            rec.wall_time_s = std::numeric_limits<double>::quiet_NaN();
            rec.finite = false;
            try {
                std::vector<double> walls;
                walls.reserve(static_cast<std::size_t>(config.repetitions));
                Trajectory first;
                for (int rep = 0; rep < config.repetitions; ++rep) {
                    Trajectory traj = is_exponential(method)
                                          ? integrate(prob.semilinear, method, h)
                                          : integrate(prob.general, method, h, config.gamma);
                    walls.push_back(traj.wall_time_s);
                    if (rep == 0) first = std::move(traj);
                }
                rec.wall_time_s = median(std::move(walls));
                rec.finite = first.finite;
                if (first.finite) {
                    try {
                        rec.rel_error = relative_error(first.states.back(), ref);
                    } catch (const std::domain_error&) {
                        // degenerate reference: leave the error column as NaN
                    }
                }
            } catch (const StepFailure&) {
                // a singular implicit stage counts as a failed (non-finite) run
            }
            records.push_back(rec);
        }
    }
    return records;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    // Group rows by method in order of first appearance, h descending inside
    // each group, regardless of how the caller ordered them.
    std::vector<std::string> method_order;
    const auto rank = [&method_order](Method m) {
        const std::string name = method_name(m);
        for (std::size_t i = 0; i < method_order.size(); ++i) {
            if (method_order[i] == name) return i;
        }
        method_order.push_back(name);
        return method_order.size() - 1;
    };
    std::vector<std::pair<std::size_t, SweepRecord>> rows;
    rows.reserve(records.size());
    for (const SweepRecord& rec : records) rows.emplace_back(rank(rec.method), rec);
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second.h > b.second.h;
    });

    std::ofstream out = open_for_write(path, "emit_csv");
    out << "method,h,rel_error,wall_time_s,finite\n";
    char buf[160];
    for (const auto& [_, rec] : rows) {
        std::string err = "nan";
        if (std::isfinite(rec.rel_error)) {
            std::snprintf(buf, sizeof buf, "%.17g", rec.rel_error);
            err = buf;
        }
        std::string wall = "nan";
        if (std::isfinite(rec.wall_time_s)) {
            std::snprintf(buf, sizeof buf, "%.17g", rec.wall_time_s);
            wall = buf;
        }
        std::snprintf(buf, sizeof buf, "%.5e", rec.h);
        out << method_name(rec.method) << ',' << buf << ',' << err << ',' << wall << ','
            << (rec.finite ? 1 : 0) << '\n';
    }
    if (!out) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

std::vector<SweepRecord> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "method,h,rel_error,wall_time_s,finite") {
        throw std::runtime_error("parse_csv: '" + path + "' has an unexpected header");
    }
    std::vector<SweepRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != 5) {
            throw std::runtime_error("parse_csv: line " + std::to_string(line_no)
                                     + " has " + std::to_string(fields.size())
                                     + " fields, expected 5");
        }
        try {
            SweepRecord rec;
            rec.method = parse_method(fields[0]);
            rec.h = std::stod(fields[1]);
            rec.rel_error = fields[2] == "nan" ? std::numeric_limits<double>::quiet_NaN()
                                               : std::stod(fields[2]);
            rec.wall_time_s = fields[3] == "nan" ? std::numeric_limits<double>::quiet_NaN()
                                                 : std::stod(fields[3]);
            if (fields[4] != "0" && fields[4] != "1") {
                throw std::invalid_argument("finite flag must be 0 or 1");
            }
            rec.finite = fields[4] == "1";
            records.push_back(rec);
        } catch (const std::exception& e) {
            throw std::runtime_error("parse_csv: line " + std::to_string(line_no) + ": "
                                     + e.what());
        }
    }
    return records;
}

void emit_raster(const StabilityRaster& raster, const std::string& path, RasterFormat format) {
    std::ofstream out = open_for_write(path, "emit_raster");
    if (format == RasterFormat::Csv) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%zu,%zu", raster.window.re_min,
                      raster.window.re_max, raster.window.im_min, raster.window.im_max,
                      raster.nx, raster.ny);
        out << buf << '\n';
        for (std::size_t iy = 0; iy < raster.ny; ++iy) {
            for (std::size_t ix = 0; ix < raster.nx; ++ix) {
                if (ix > 0) out << ',';
                out << (raster.at(ix, iy) ? 1 : 0);
            }
            out << '\n';
        }
    } else {
        out << "P2\n" << raster.nx << ' ' << raster.ny << "\n1\n";
        for (std::size_t iy = 0; iy < raster.ny; ++iy) {
            for (std::size_t ix = 0; ix < raster.nx; ++ix) {
                if (ix > 0) out << ' ';
                out << (raster.at(ix, iy) ? 1 : 0);
            }
            out << '\n';
        }
    }
    if (!out) throw std::runtime_error("emit_raster: write to '" + path + "' failed");
}

}  // namespace exprk
