#pragma once

// Grid-based cross-check of the closed-form entanglement.
//
// Wave functions are sampled on a uniform (x1, x2) grid; the entanglement entropy
// is read off the singular values of the amplitude matrix (Schmidt decomposition).
// Time dependence uses the image solution
//     psi_t = (f_t - g_t) * step(x_r - a),   g_t(x) = f_t(R x),
// where f_t is the freely evolved product of the two packets and R reflects the
// relative coordinate about x_r = a at fixed center of mass:
//     R(x1, x2) = (dmu x1 + 2 mu2 x2 + 2 mu2 a, 2 mu1 x1 - dmu x2 - 2 mu1 a).

#include "hardcore/gaussian_core.hpp"
#include "hardcore/scattering.hpp"

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

namespace hardcore {

using cplx = std::complex<double>;

struct GridSpec {
    GridSpec(double x1_min, double x1_max, double x2_min, double x2_max, int n1, int n2);

    double x1_min;
    double x1_max;
    double x2_min;
    double x2_max;
    int n1;
    int n2;

    double dx1() const noexcept { return (x1_max - x1_min) / (n1 - 1); }
    double dx2() const noexcept { return (x2_max - x2_min) / (n2 - 1); }
    double x1(int i) const noexcept { return x1_min + i * dx1(); }
    double x2(int j) const noexcept { return x2_min + j * dx2(); }
};

constexpr int min_grid_points = 64;
constexpr int default_grid_points = 512;
constexpr double default_grid_widths = 6.0;
/// Largest tolerated |1 - sum |psi|^2 dx1 dx2| for a sampled normalized state.
constexpr double coverage_budget = 0.01;

/// Amplitudes psi(x1_i, x2_j) stored with i as the row index.
struct WaveGrid {
    WaveGrid(Eigen::MatrixXcd amplitudes, GridSpec grid);

    Eigen::MatrixXcd amplitudes;
    GridSpec grid;

    /// sum |psi|^2 dx1 dx2
    double norm_sq() const;
};

struct TransientCurve {
    std::vector<double> times;
    std::vector<double> entropies;
};

/// The two packets and masses that define f_0, without the approach-geometry checks
/// of ScatterParams (useful for phase-free or centered test states).
struct TwoPacketState {
    MassFractions mu;
    double total_mass;
    GaussianPacket packet1;
    GaussianPacket packet2;
    double core_radius;

    static TwoPacketState from(const ScatterParams &params);
};

/// A freely evolved Gaussian packet with complex width sigma^2 + i t / m.
class EvolvedPacket {
  public:
    EvolvedPacket(const GaussianPacket &initial, double mass, double t);

    cplx amplitude(double x) const;
    cplx width_sq() const noexcept { return width_sq_; }
    double mean_position() const noexcept;
    /// Variance of |psi|^2, |sigma^2(t)|^2 / (2 sigma^2).
    double position_variance() const noexcept;
    double momentum() const noexcept { return initial_.momentum; }

  private:
    GaussianPacket initial_;
    double mass_;
    double t_;
    cplx width_sq_;
    cplx prefactor_;
};

/// phi_G(x; Q, K, sigma^2) = alpha exp(i K x) exp(-(x - Q)^2 / (2 sigma^2)).
cplx gaussian_amplitude(const GaussianPacket &packet, double x);

EvolvedPacket free_evolve_packet(const GaussianPacket &packet, double mass, double t);

/// Grid around the reflected state g_0: marginal means +- widths standard deviations.
GridSpec auto_grid_g0(const TwoPacketState &state, int n = default_grid_points,
                      double widths = default_grid_widths);

/// g_0 from the mixed-argument Gaussian product, phases included.
/// Throws CoverageError if the grid misses 4 marginal standard deviations or the
/// sampled norm deviates from 1 by more than the coverage budget.
WaveGrid sample_g0(const TwoPacketState &state, const GridSpec &grid);
WaveGrid sample_g0(const ScatterParams &params, const GridSpec &grid);
WaveGrid sample_g0(const ScatterParams &params, int n = default_grid_points);

/// Phase- and displacement-free g~_0 (only the quadratic exponent).
WaveGrid sample_g0_quadratic(const MassFractions &mu, double sigma1_sq, double sigma2_sq, const GridSpec &grid);

/// Free product state f_t and its reflection g_t = f_t o R on the grid (no norm check).
WaveGrid sample_f_t(const TwoPacketState &state, double t, const GridSpec &grid);
WaveGrid sample_g_t(const TwoPacketState &state, double t, const GridSpec &grid);

/// Grid around those components of psi_t that carry weight in the allowed region x_r > a.
GridSpec auto_grid_psi(const ScatterParams &params, double t, int n = default_grid_points,
                       double widths = default_grid_widths);

/// (f_t - g_t) step(x_r - a) with step(0) = 0. Throws CoverageError on truncation.
WaveGrid psi_t(const ScatterParams &params, double t, const GridSpec &grid);
WaveGrid psi_t(const ScatterParams &params, double t, int n = default_grid_points);

/// Normalized Schmidt weights (squared singular values of psi sqrt(dx1 dx2)), descending,
/// with weights below 1e-14 dropped.
std::vector<double> schmidt_weights(const WaveGrid &wave);

/// -sum w log2 w over the Schmidt weights.
double schmidt_entropy(const WaveGrid &wave);

/// Schmidt entropy of psi_t at each time on an auto grid. Times must be ascending and non-empty.
TransientCurve transient_curve(const ScatterParams &params, std::span<const double> times,
                               int n = default_grid_points);

/// Header line "# x1_min=... x1_max=... x2_min=... x2_max=... n1=... n2=...", then one
/// line per x1 row with n2 "re,im" pairs, 17 significant digits.
void write_wave_grid_csv(const WaveGrid &wave, std::ostream &out);
WaveGrid read_wave_grid_csv(std::istream &in);

} // namespace hardcore
