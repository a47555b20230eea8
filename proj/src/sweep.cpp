#include "hardcore/sweep.hpp"

#include "hardcore/ellipse_geometry.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/numerics_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

namespace hardcore::cli {

namespace {

struct Widths {
    double sigma1_sq;
    double sigma2_sq;
};

Widths resolve_widths(const SweepConfig &c) {
    const double s2 = c.sigma2_sq.value_or(1.0);
    if (!(s2 > 0.0) || !std::isfinite(s2))
        throw DomainError("--sigma2-sq must be > 0 (width positivity)");
    if (c.sigma1_sq && c.ratio)
        throw DomainError("give either --sigma1-sq or --ratio, not both");
    double s1 = 0.0;
    if (c.sigma1_sq) {
        s1 = *c.sigma1_sq;
        if (!(s1 > 0.0) || !std::isfinite(s1))
            throw DomainError("--sigma1-sq must be > 0 (width positivity)");
    } else {
        const double r = c.ratio.value_or(10.0);
        if (!(r > 0.0) || !std::isfinite(r))
            throw DomainError("--ratio sigma1/sigma2 must be > 0");
        s1 = r * r * s2;
    }
    return {s1, s2};
}

MassFractions resolve_mu(const SweepConfig &c, double &total_mass) {
    if (c.mu1 && (c.mass1 || c.mass2))
        throw DomainError("give either --mu1 or --mass1/--mass2, not both");
    if (c.mass1 || c.mass2) {
        if (!c.mass1 || !c.mass2)
            throw DomainError("--mass1 and --mass2 must be given together");
        if (!(*c.mass1 > 0.0) || !(*c.mass2 > 0.0))
            throw DomainError("masses must be > 0");
        total_mass = *c.mass1 + *c.mass2;
        return MassFractions::from_masses(*c.mass1, *c.mass2);
    }
    total_mass = 1.0;
    return MassFractions::from_fraction(c.mu1.value_or(0.25));
}

double width_ratio(const Widths &w) { return std::sqrt(w.sigma1_sq / w.sigma2_sq); }

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell(const Record &v) {
    if (v.is_number_float())
        return number(v.get<double>());
    if (v.is_number())
        return v.dump();
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

// "# key=value ..." over the scalar fields of a record.
std::string metadata_line(const Record &record) {
    std::string line = "#";
    for (const auto &[key, value] : record.items()) {
        if (value.is_structured())
            continue;
        line += ' ' + key + '=' + cell(value);
    }
    return line + '\n';
}

std::string csv_table(const std::vector<std::string> &columns, const Record &rows) {
    std::string s;
    for (std::size_t i = 0; i < columns.size(); ++i)
        s += (i ? "," : "") + columns[i];
    s += '\n';
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            s += (i ? "," : "") + cell(row.at(columns[i]));
        s += '\n';
    }
    return s;
}

Record ellipse_record(const EllipseShape &e) {
    return {{"semi_major", e.semi_major},
            {"semi_minor", e.semi_minor},
            {"angle_rad", e.angle_rad},
            {"angle_deg", e.angle_rad * 180.0 / std::numbers::pi},
            {"area", e.area()}};
}

Record points_record(const std::vector<Vec2> &points) {
    Record arr = Record::array();
    for (const Vec2 &p : points)
        arr.push_back({p.x(), p.y()});
    return arr;
}

double max_residual(const QuadraticForm2 &form, const std::vector<Vec2> &points) {
    double worst = 0.0;
    for (const Vec2 &p : points)
        worst = std::max(worst, std::abs(form.evaluate(p) - 1.0));
    return worst;
}

std::vector<double> transient_times(const SweepConfig &c, const ScatterParams &params) {
    if (!c.times.empty())
        return c.times;
    const int count = c.points.value_or(25);
    if (count < 1)
        throw DomainError("transient needs a non-empty time list (--times or --points >= 1)");
    // Three collision times: the reflected packets are well separated by then.
    const double t_end = 3.0 * params.collision_time();
    std::vector<double> times;
    for (int i = 0; i < count; ++i)
        times.push_back(count == 1 ? t_end : t_end * i / (count - 1));
    return times;
}

} // namespace

ScatterParams resolve_params(const SweepConfig &c) {
    double total_mass = 1.0;
    const MassFractions mu = resolve_mu(c, total_mass);
    const Widths w = resolve_widths(c);
    if (!(c.core_radius >= 0.0))
        throw DomainError("--core-radius must be >= 0");
    const double start = 8.0 * std::sqrt(std::max(w.sigma1_sq, w.sigma2_sq)) + c.core_radius;
    const Kinematics kin{c.q1.value_or(start), c.q2.value_or(start), c.momentum, c.core_radius};
    return ScatterParams(mu, w.sigma1_sq, w.sigma2_sq, kin, total_mass);
}

Record run_single(const SweepConfig &c) {
    const ScatterParams p = resolve_params(c);
    const EntanglementResult r = asymptotic_entanglement(p);
    const double ratio = std::sqrt(p.sigma1_sq() / p.sigma2_sq());
    return {{"mode", "single"},
            {"mu1", p.mu().mu1()},
            {"mu2", p.mu().mu2()},
            {"sigma1_sq", p.sigma1_sq()},
            {"sigma2_sq", p.sigma2_sq()},
            {"d_exact", r.d_value},
            {"d_asymptotic", d_asymptotic(p.mu(), ratio)},
            {"entropy_bits", r.entropy_bits},
            {"purity", r.purity},
            {"classification", std::string(to_string(is_zero_entanglement(p)))}};
}

Record run_sweep_mu(const SweepConfig &c) {
    const Widths w = resolve_widths(c);
    const int count = c.points.value_or(99);
    if (count < 2)
        throw DomainError("sweep-mu needs --points >= 2");
    if (!(c.mu_start < c.mu_stop))
        throw DomainError("sweep-mu needs mu start < stop");
    if (!(c.mu_start > 0.0 && c.mu_stop < 1.0))
        throw DomainError("sweep-mu range must lie inside (0, 1)");
    const double ratio = width_ratio(w);
    Record rows = Record::array();
    for (int i = 0; i < count; ++i) {
        const double mu1 = c.mu_start + (c.mu_stop - c.mu_start) * i / (count - 1);
        const MassFractions mu = MassFractions::from_fraction(mu1);
        const EntanglementResult r = EntanglementResult::from_d(d_closed_form(mu, w.sigma1_sq, w.sigma2_sq));
        rows.push_back({{"mu1", mu1},
                        {"d_exact", r.d_value},
                        {"d_asymptotic", d_asymptotic(mu, ratio)},
                        {"entropy_bits", r.entropy_bits},
                        {"purity", r.purity}});
    }
    return {{"mode", "sweep-mu"},
            {"ratio", ratio},
            {"sigma1_sq", w.sigma1_sq},
            {"sigma2_sq", w.sigma2_sq},
            {"mu_start", c.mu_start},
            {"mu_stop", c.mu_stop},
            {"points", count},
            {"d_asymptotic_at_mu1_1", d_asymptotic(1.0, ratio)},
            {"rows", rows}};
}

Record run_ellipse(const SweepConfig &c) {
    double total_mass = 1.0;
    const MassFractions mu = resolve_mu(c, total_mass);
    const Widths w = resolve_widths(c);
    const int count = c.points.value_or(64);
    if (count < 1)
        throw DomainError("ellipse needs --points >= 1");
    const double sigma1 = std::sqrt(w.sigma1_sq);
    const double sigma2 = std::sqrt(w.sigma2_sq);

    const QuadraticForm2 initial_m = initial_form(w.sigma1_sq, w.sigma2_sq);
    const QuadraticForm2 final_m = matrix_m(mu, w.sigma1_sq, w.sigma2_sq);
    const EllipseShape initial = ellipse_from_form(initial_m);
    const EllipseShape exact = ellipse_from_form(final_m);
    const ApproxEllipse approx = approx_final_ellipse(mu, sigma1, sigma2);

    const auto initial_pts = boundary_points(initial, count);
    const auto exact_pts = boundary_points(exact, count);
    const auto approx_pts = boundary_points(approx.shape, count);

    Record approx_rec = ellipse_record(approx.shape);
    approx_rec["valid"] = approx.valid;
    return {{"mode", "ellipse"},
            {"mu1", mu.mu1()},
            {"sigma1", sigma1},
            {"sigma2", sigma2},
            {"area_relative_difference", std::abs(exact.area() - initial.area()) / initial.area()},
            {"max_boundary_residual",
             std::max(max_residual(initial_m, initial_pts), max_residual(final_m, exact_pts))},
            {"initial", ellipse_record(initial)},
            {"final_exact", ellipse_record(exact)},
            {"final_approx", approx_rec},
            {"boundary",
             {{"initial", points_record(initial_pts)},
              {"final_exact", points_record(exact_pts)},
              {"final_approx", points_record(approx_pts)}}}};
}

Record run_oracle_check(const SweepConfig &c) {
    const ScatterParams p = resolve_params(c);
    const TwoPacketState state = TwoPacketState::from(p);
    const GridSpec grid = auto_grid_g0(state, c.grid_n, c.grid_widths);
    const double analytic = asymptotic_entanglement(p).entropy_bits;
    const double schmidt = schmidt_entropy(sample_g0(state, grid));
    const double diff = std::abs(schmidt - analytic);
    return {{"mode", "oracle-check"},
            {"mu1", p.mu().mu1()},
            {"sigma1_sq", p.sigma1_sq()},
            {"sigma2_sq", p.sigma2_sq()},
            {"grid_n", c.grid_n},
            {"grid_widths", c.grid_widths},
            {"entropy_analytic", analytic},
            {"entropy_schmidt", schmidt},
            {"abs_diff", diff},
            {"tolerance", oracle_tolerance_bits},
            {"pass", diff <= oracle_tolerance_bits}};
}

Record run_transient(const SweepConfig &c) {
    const ScatterParams p = resolve_params(c);
    const std::vector<double> times = transient_times(c, p);
    const TransientCurve curve = transient_curve(p, times, c.grid_n);
    return {{"mode", "transient"},
            {"mu1", p.mu().mu1()},
            {"mu2", p.mu().mu2()},
            {"mass1", p.mass1()},
            {"mass2", p.mass2()},
            {"sigma1_sq", p.sigma1_sq()},
            {"sigma2_sq", p.sigma2_sq()},
            {"core_radius", p.core_radius()},
            {"momentum", p.momentum()},
            {"q1", p.q1()},
            {"q2", p.q2()},
            {"grid_n", c.grid_n},
            {"collision_time", p.collision_time()},
            {"entropy_asymptotic", asymptotic_entanglement(p).entropy_bits},
            {"peak_entropy", *std::max_element(curve.entropies.begin(), curve.entropies.end())},
            {"times", curve.times},
            {"entropies", curve.entropies}};
}

Record run(const SweepConfig &c) {
    switch (c.mode) {
    case Mode::Single:
        return run_single(c);
    case Mode::SweepMu:
        return run_sweep_mu(c);
    case Mode::Ellipse:
        return run_ellipse(c);
    case Mode::Transient:
        return run_transient(c);
    case Mode::OracleCheck:
        return run_oracle_check(c);
    }
    throw DomainError("unknown mode");
}

std::string render(const Record &record, Mode mode, Format format) {
    if (format == Format::Json)
        return record.dump(2) + '\n';

    switch (mode) {
    case Mode::Single:
    case Mode::OracleCheck: {
        std::vector<std::string> columns;
        for (const auto &[key, value] : record.items())
            if (key != "mode")
                columns.push_back(key);
        return csv_table(columns, Record::array({record}));
    }
    case Mode::SweepMu:
        return metadata_line(record) +
               csv_table({"mu1", "d_exact", "d_asymptotic", "entropy_bits", "purity"}, record.at("rows"));
    case Mode::Transient: {
        Record rows = Record::array();
        const auto &t = record.at("times");
        const auto &s = record.at("entropies");
        for (std::size_t i = 0; i < t.size(); ++i)
            rows.push_back({{"t", t[i]}, {"entropy_bits", s[i]}});
        return metadata_line(record) + csv_table({"t", "entropy_bits"}, rows);
    }
    case Mode::Ellipse: {
        std::string s = metadata_line(record);
        for (const char *name : {"initial", "final_exact", "final_approx"}) {
            Record shape = record.at(name);
            shape["curve"] = name;
            s += metadata_line(shape);
        }
        Record rows = Record::array();
        for (const char *name : {"initial", "final_exact", "final_approx"}) {
            const auto &pts = record.at("boundary").at(name);
            for (std::size_t k = 0; k < pts.size(); ++k)
                rows.push_back({{"curve", name}, {"k", k}, {"x1", pts[k][0]}, {"x2", pts[k][1]}});
        }
        return s + csv_table({"curve", "k", "x1", "x2"}, rows);
    }
    }
    throw DomainError("unknown mode");
}

} // namespace hardcore::cli
