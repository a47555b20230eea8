#include "hardcore/numerics_oracle.hpp"

#include "hardcore/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace hardcore {

namespace {

constexpr double schmidt_weight_floor = 1e-14;
// Components of psi_t lighter than this in the allowed region do not shape the auto grid.
constexpr double negligible_weight = 1e-15;
constexpr double g0_coverage_sigmas = 4.0;

struct Moments2 {
    Vec2 mean;
    Mat2 cov;
};

// Position moments of f_t (a product state, so the covariance is diagonal).
Moments2 free_moments(const TwoPacketState &s, double t) {
    const EvolvedPacket p1 = free_evolve_packet(s.packet1, s.mu.mu1() * s.total_mass, t);
    const EvolvedPacket p2 = free_evolve_packet(s.packet2, s.mu.mu2() * s.total_mass, t);
    Moments2 m;
    m.mean = Vec2(p1.mean_position(), p2.mean_position());
    m.cov = Vec2(p1.position_variance(), p2.position_variance()).asDiagonal();
    return m;
}

Vec2 reflection_offset(const TwoPacketState &s) {
    return Vec2(2.0 * s.mu.mu2() * s.core_radius, -2.0 * s.mu.mu1() * s.core_radius);
}

// g(x) = f(L x + b) with L an involution, so the moments map through x = L (y - b) = L y + b.
Moments2 reflected_moments(const TwoPacketState &s, const Moments2 &f) {
    const Mat2 l = [&] {
        Mat2 m;
        m << s.mu.delta(), 2.0 * s.mu.mu2(), 2.0 * s.mu.mu1(), -s.mu.delta();
        return m;
    }();
    return {l * f.mean + reflection_offset(s), l * f.cov * l.transpose()};
}

struct Box {
    double lo1 = std::numeric_limits<double>::infinity();
    double hi1 = -std::numeric_limits<double>::infinity();
    double lo2 = std::numeric_limits<double>::infinity();
    double hi2 = -std::numeric_limits<double>::infinity();

    void include(const Moments2 &m, double widths) {
        const double s1 = std::sqrt(m.cov(0, 0));
        const double s2 = std::sqrt(m.cov(1, 1));
        lo1 = std::min(lo1, m.mean.x() - widths * s1);
        hi1 = std::max(hi1, m.mean.x() + widths * s1);
        lo2 = std::min(lo2, m.mean.y() - widths * s2);
        hi2 = std::max(hi2, m.mean.y() + widths * s2);
    }
    GridSpec grid(int n) const { return GridSpec(lo1, hi1, lo2, hi2, n, n); }
};

void check_norm(const WaveGrid &wave, const char *what) {
    const double deficit = 1.0 - wave.norm_sq();
    if (std::abs(deficit) > coverage_budget) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: grid truncates the state, norm deficit %.3e exceeds %.0e", what,
                      deficit, coverage_budget);
        throw CoverageError(buf, deficit);
    }
}

std::string format17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

GridSpec::GridSpec(double x1_min_, double x1_max_, double x2_min_, double x2_max_, int n1_, int n2_)
    : x1_min(x1_min_), x1_max(x1_max_), x2_min(x2_min_), x2_max(x2_max_), n1(n1_), n2(n2_) {
    if (!std::isfinite(x1_min) || !std::isfinite(x1_max) || !std::isfinite(x2_min) || !std::isfinite(x2_max))
        throw DomainError("grid bounds must be finite");
    if (!(x1_max > x1_min) || !(x2_max > x2_min))
        throw DomainError("grid needs max > min on both axes");
    if (n1 < min_grid_points || n2 < min_grid_points)
        throw DomainError("grid needs at least " + std::to_string(min_grid_points) + " points per axis");
}

WaveGrid::WaveGrid(Eigen::MatrixXcd amplitudes_, GridSpec grid_)
    : amplitudes(std::move(amplitudes_)), grid(grid_) {
    if (amplitudes.rows() != grid.n1 || amplitudes.cols() != grid.n2)
        throw DomainError("amplitude matrix shape does not match the grid");
    if (!amplitudes.allFinite())
        throw InvariantViolation("wave grid has non-finite amplitudes");
}

double WaveGrid::norm_sq() const { return amplitudes.squaredNorm() * grid.dx1() * grid.dx2(); }

TwoPacketState TwoPacketState::from(const ScatterParams &params) {
    return {params.mu(), params.total_mass(), params.packet1(), params.packet2(), params.core_radius()};
}

EvolvedPacket::EvolvedPacket(const GaussianPacket &initial, double mass, double t)
    : initial_(initial), mass_(mass), t_(t), width_sq_(initial.width_sq, t / mass) {
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw DomainError("packet mass must be positive");
    const double k = initial_.momentum;
    prefactor_ = initial_.normalization() * std::sqrt(cplx(initial_.width_sq) / width_sq_) *
                 std::polar(1.0, -k * k * t_ / (2.0 * mass_));
}

cplx EvolvedPacket::amplitude(double x) const {
    const double shift = x - mean_position();
    const cplx exponent = -shift * shift / (2.0 * width_sq_) + cplx(0.0, initial_.momentum * x);
    return prefactor_ * std::exp(exponent);
}

double EvolvedPacket::mean_position() const noexcept {
    return initial_.center + initial_.momentum * t_ / mass_;
}

double EvolvedPacket::position_variance() const noexcept {
    return std::norm(width_sq_) / (2.0 * initial_.width_sq);
}

cplx gaussian_amplitude(const GaussianPacket &packet, double x) {
    const double shift = x - packet.center;
    return packet.normalization() * std::polar(std::exp(-shift * shift / (2.0 * packet.width_sq)),
                                               packet.momentum * x);
}

EvolvedPacket free_evolve_packet(const GaussianPacket &packet, double mass, double t) {
    return EvolvedPacket(packet, mass, t);
}

GridSpec auto_grid_g0(const TwoPacketState &state, int n, double widths) {
    Box box;
    box.include(reflected_moments(state, free_moments(state, 0.0)), widths);
    return box.grid(n);
}

WaveGrid sample_g0(const TwoPacketState &state, const GridSpec &grid) {
    const Moments2 g = reflected_moments(state, free_moments(state, 0.0));
    for (int axis = 0; axis < 2; ++axis) {
        const double lo = axis == 0 ? grid.x1_min : grid.x2_min;
        const double hi = axis == 0 ? grid.x1_max : grid.x2_max;
        const double reach = g0_coverage_sigmas * std::sqrt(g.cov(axis, axis));
        if (g.mean(axis) - reach < lo || g.mean(axis) + reach > hi) {
            // Report the truncation the grid would actually cause.
            const double tails = 0.5 * (std::erfc((g.mean(axis) - lo) / (std::sqrt(2.0 * g.cov(axis, axis)))) +
                                       std::erfc((hi - g.mean(axis)) / (std::sqrt(2.0 * g.cov(axis, axis)))));
            throw CoverageError("sample_g0: grid covers less than 4 standard deviations of the x" +
                                    std::to_string(axis + 1) + " marginal (marginal norm deficit " +
                                    format17(tails) + ")",
                                tails);
        }
    }

    const double m1 = state.mu.mu1();
    const double m2 = state.mu.mu2();
    const double dm = state.mu.delta();
    const GaussianPacket first(state.packet1.center - 2.0 * m2 * state.core_radius, state.packet1.momentum,
                               state.packet1.width_sq);
    const GaussianPacket second(state.packet2.center + 2.0 * m1 * state.core_radius, state.packet2.momentum,
                                state.packet2.width_sq);
    Eigen::MatrixXcd amp(grid.n1, grid.n2);
    for (int j = 0; j < grid.n2; ++j) {
        const double x2 = grid.x2(j);
        for (int i = 0; i < grid.n1; ++i) {
            const double x1 = grid.x1(i);
            amp(i, j) = gaussian_amplitude(first, 2.0 * m2 * x2 + dm * x1) *
                        gaussian_amplitude(second, 2.0 * m1 * x1 - dm * x2);
        }
    }
    WaveGrid wave(std::move(amp), grid);
    check_norm(wave, "sample_g0");
    return wave;
}

WaveGrid sample_g0(const ScatterParams &params, const GridSpec &grid) {
    return sample_g0(TwoPacketState::from(params), grid);
}

WaveGrid sample_g0(const ScatterParams &params, int n) {
    const TwoPacketState state = TwoPacketState::from(params);
    return sample_g0(state, auto_grid_g0(state, n));
}

WaveGrid sample_g0_quadratic(const MassFractions &mu, double sigma1_sq, double sigma2_sq, const GridSpec &grid) {
    const double alpha = GaussianPacket(0.0, 0.0, sigma1_sq).normalization() *
                         GaussianPacket(0.0, 0.0, sigma2_sq).normalization();
    const double m1 = mu.mu1();
    const double m2 = mu.mu2();
    const double dm = mu.delta();
    Eigen::MatrixXcd amp(grid.n1, grid.n2);
    for (int j = 0; j < grid.n2; ++j) {
        const double x2 = grid.x2(j);
        for (int i = 0; i < grid.n1; ++i) {
            const double x1 = grid.x1(i);
            const double u = dm * x1 + 2.0 * m2 * x2;
            const double v = 2.0 * m1 * x1 - dm * x2;
            amp(i, j) = alpha * std::exp(-u * u / (2.0 * sigma1_sq) - v * v / (2.0 * sigma2_sq));
        }
    }
    return WaveGrid(std::move(amp), grid);
}

WaveGrid sample_f_t(const TwoPacketState &state, double t, const GridSpec &grid) {
    const EvolvedPacket p1 = free_evolve_packet(state.packet1, state.mu.mu1() * state.total_mass, t);
    const EvolvedPacket p2 = free_evolve_packet(state.packet2, state.mu.mu2() * state.total_mass, t);
    Eigen::VectorXcd u(grid.n1);
    Eigen::VectorXcd v(grid.n2);
    for (int i = 0; i < grid.n1; ++i)
        u(i) = p1.amplitude(grid.x1(i));
    for (int j = 0; j < grid.n2; ++j)
        v(j) = p2.amplitude(grid.x2(j));
    return WaveGrid(u * v.transpose(), grid);
}

WaveGrid sample_g_t(const TwoPacketState &state, double t, const GridSpec &grid) {
    const EvolvedPacket p1 = free_evolve_packet(state.packet1, state.mu.mu1() * state.total_mass, t);
    const EvolvedPacket p2 = free_evolve_packet(state.packet2, state.mu.mu2() * state.total_mass, t);
    const double m1 = state.mu.mu1();
    const double m2 = state.mu.mu2();
    const double dm = state.mu.delta();
    const double a = state.core_radius;
    Eigen::MatrixXcd amp(grid.n1, grid.n2);
    for (int j = 0; j < grid.n2; ++j) {
        const double x2 = grid.x2(j);
        for (int i = 0; i < grid.n1; ++i) {
            const double x1 = grid.x1(i);
            amp(i, j) = p1.amplitude(dm * x1 + 2.0 * m2 * x2 + 2.0 * m2 * a) *
                        p2.amplitude(2.0 * m1 * x1 - dm * x2 - 2.0 * m1 * a);
        }
    }
    return WaveGrid(std::move(amp), grid);
}

GridSpec auto_grid_psi(const ScatterParams &params, double t, int n, double widths) {
    const TwoPacketState state = TwoPacketState::from(params);
    const Moments2 f = free_moments(state, t);
    const double mean_r = f.mean.x() - f.mean.y();
    const double sd_r = std::sqrt(f.cov(0, 0) + f.cov(1, 1));
    const double a = params.core_radius();
    // f_t weight beyond the wall; by the reflection symmetry g_t carries the complement.
    const double f_allowed = 0.5 * std::erfc((a - mean_r) / (std::sqrt(2.0) * sd_r));
    const double g_allowed = 0.5 * std::erfc((mean_r - a) / (std::sqrt(2.0) * sd_r));
    Box box;
    if (f_allowed > negligible_weight)
        box.include(f, widths);
    if (g_allowed > negligible_weight)
        box.include(reflected_moments(state, f), widths);
    return box.grid(n);
}

WaveGrid psi_t(const ScatterParams &params, double t, const GridSpec &grid) {
    const TwoPacketState state = TwoPacketState::from(params);
    const WaveGrid f = sample_f_t(state, t, grid);
    const WaveGrid g = sample_g_t(state, t, grid);
    const double a = params.core_radius();
    Eigen::MatrixXcd amp(grid.n1, grid.n2);
    for (int j = 0; j < grid.n2; ++j) {
        const double x2 = grid.x2(j);
        for (int i = 0; i < grid.n1; ++i)
            amp(i, j) = grid.x1(i) - x2 - a > 0.0 ? f.amplitudes(i, j) - g.amplitudes(i, j) : cplx(0.0);
    }
    WaveGrid wave(std::move(amp), grid);
    check_norm(wave, "psi_t");
    return wave;
}

WaveGrid psi_t(const ScatterParams &params, double t, int n) {
    return psi_t(params, t, auto_grid_psi(params, t, n));
}

std::vector<double> schmidt_weights(const WaveGrid &wave) {
    check_norm(wave, "schmidt_entropy");
    const double scale = std::sqrt(wave.grid.dx1() * wave.grid.dx2());
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(wave.amplitudes * scale);
    const Eigen::VectorXd s = svd.singularValues();
    const double total = s.squaredNorm();
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(s.size()));
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        const double w = s(k) * s(k) / total;
        if (w >= schmidt_weight_floor)
            weights.push_back(w);
    }
    return weights;
}

double schmidt_entropy(const WaveGrid &wave) {
    const std::vector<double> weights = schmidt_weights(wave);
    double entropy = 0.0;
    for (double w : weights)
        entropy -= w * std::log2(w);
    return std::max(entropy, 0.0);
}

TransientCurve transient_curve(const ScatterParams &params, std::span<const double> times, int n) {
    if (times.empty())
        throw DomainError("transient curve needs at least one time point");
    if (!std::is_sorted(times.begin(), times.end()))
        throw DomainError("transient curve times must be ascending");
    TransientCurve curve;
    curve.times.assign(times.begin(), times.end());
    curve.entropies.reserve(times.size());
    for (double t : times)
        curve.entropies.push_back(schmidt_entropy(psi_t(params, t, n)));
    return curve;
}

void write_wave_grid_csv(const WaveGrid &wave, std::ostream &out) {
    const GridSpec &g = wave.grid;
    out << "# x1_min=" << format17(g.x1_min) << " x1_max=" << format17(g.x1_max)
        << " x2_min=" << format17(g.x2_min) << " x2_max=" << format17(g.x2_max) << " n1=" << g.n1
        << " n2=" << g.n2 << '\n';
    for (int i = 0; i < g.n1; ++i) {
        for (int j = 0; j < g.n2; ++j) {
            if (j > 0)
                out << ',';
            out << format17(wave.amplitudes(i, j).real()) << ',' << format17(wave.amplitudes(i, j).imag());
        }
        out << '\n';
    }
    if (!out)
        throw IoError("failed writing wave grid");
}

WaveGrid read_wave_grid_csv(std::istream &in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# ", 0) != 0)
        throw IoError("wave grid file lacks the '# ' header line");
    std::map<std::string, std::string> fields;
    std::istringstream hs(header.substr(2));
    for (std::string token; hs >> token;) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw IoError("malformed header token '" + token + "'");
        fields[token.substr(0, eq)] = token.substr(eq + 1);
    }
    auto field = [&](const char *key) -> const std::string & {
        const auto it = fields.find(key);
        if (it == fields.end())
            throw IoError(std::string("wave grid header misses ") + key);
        return it->second;
    };
    const GridSpec grid(std::stod(field("x1_min")), std::stod(field("x1_max")), std::stod(field("x2_min")),
                        std::stod(field("x2_max")), std::stoi(field("n1")), std::stoi(field("n2")));
    Eigen::MatrixXcd amp(grid.n1, grid.n2);
    std::string line;
    for (int i = 0; i < grid.n1; ++i) {
        if (!std::getline(in, line))
            throw IoError("wave grid file ends early at row " + std::to_string(i));
        std::istringstream ls(line);
        std::string cell;
        for (int j = 0; j < grid.n2; ++j) {
            double parts[2];
            for (double &p : parts) {
                if (!std::getline(ls, cell, ','))
                    throw IoError("wave grid row " + std::to_string(i) + " is short");
                p = std::stod(cell);
            }
            amp(i, j) = cplx(parts[0], parts[1]);
        }
    }
    return WaveGrid(std::move(amp), grid);
}

} // namespace hardcore
