#pragma once

// Covariance-matrix algebra for two-mode Gaussian states.
//
// Units: hbar = 1. Canonical vectors are ordered (x1, p1, x2, p2) in the particle
// frame and (x_s, p_s, x_r, p_r) in the center-of-mass/relative frame. In both
// orderings the symplectic form is J = diag([[0, 1], [-1, 0]], [[0, 1], [-1, 0]]).

#include <Eigen/Dense>

namespace hardcore {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;

/// Mass fractions mu1 = m1/(m1+m2), mu2 = 1 - mu1, with 0 < mu1 < 1.
class MassFractions {
  public:
    static MassFractions from_fraction(double mu1);
    static MassFractions from_masses(double m1, double m2);

    double mu1() const noexcept { return mu1_; }
    double mu2() const noexcept { return 1.0 - mu1_; }
    /// mu1 - mu2
    double delta() const noexcept { return mu1_ - mu2(); }

  private:
    explicit MassFractions(double mu1) : mu1_(mu1) {}
    double mu1_;
};

/// One particle's Gaussian packet alpha * exp(i K x) * exp(-(x - Q)^2 / (2 sigma^2)).
struct GaussianPacket {
    GaussianPacket(double center, double momentum, double width_sq);

    double center;
    double momentum;
    double width_sq;

    /// alpha(sigma^2) = 1 / (sqrt(sigma) pi^(1/4))
    double normalization() const;
};

/// Symplectic form for the (x, p, x, p) ordering.
const Mat4 &symplectic_form();

/// Real symmetric 4x4 matrix of symmetrized second moments. Construction checks
/// symmetry (1e-12) and the uncertainty relation sigma + iJ/2 >= 0 (-1e-10).
class CovarianceMatrix4 {
  public:
    explicit CovarianceMatrix4(const Mat4 &entries);

    const Mat4 &entries() const noexcept { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }

    /// Smallest eigenvalue of the Hermitian matrix sigma + iJ/2. Zero for pure states.
    double uncertainty_margin() const;

  private:
    Mat4 entries_;
};

/// R -> linear * R + displacement with a symplectic linear part.
class AffineSymplecticMap {
  public:
    AffineSymplecticMap(const Mat4 &linear, const Vec4 &displacement);

    const Mat4 &linear() const noexcept { return linear_; }
    const Vec4 &displacement() const noexcept { return displacement_; }

    /// max |L^T J L - J| elementwise.
    double symplectic_defect() const;

  private:
    Mat4 linear_;
    Vec4 displacement_;
};

/// sigma' = [[A, C], [C^T, B]] with 2x2 blocks.
struct TwoModeBlocks {
    Mat2 block_a;
    Mat2 block_b;
    Mat2 block_c;

    Mat4 assemble() const;
    static TwoModeBlocks split(const CovarianceMatrix4 &sigma);
};

/// d >= 1/2 together with the reduced-state entropy (bits) and purity.
struct EntanglementResult {
    double d_value;
    double entropy_bits;
    double purity;

    static EntanglementResult from_d(double d);
};

/// diag(s1/2, 1/(2 s1), s2/2, 1/(2 s2)) for the product of two minimal-uncertainty packets.
CovarianceMatrix4 initial_covariance(double sigma1_sq, double sigma2_sq);

/// S = F R with x_s = mu1 x1 + mu2 x2, p_s = p1 + p2, x_r = x1 - x2, p_r = mu2 p1 - mu1 p2.
AffineSymplecticMap com_relative_map(const MassFractions &mu);

/// Closed-form F^{-1}: x1 = x_s + mu2 x_r, x2 = x_s - mu1 x_r, p1 = mu1 p_s + p_r, p2 = mu2 p_s - p_r.
Mat4 com_relative_inverse(const MassFractions &mu);

/// Reflection of the relative coordinate about x_r = a, in (x_s, p_s, x_r, p_r) ordering:
/// G = diag(1, 1, -1, -1), D = (0, 0, 2a, 0).
AffineSymplecticMap reflection_map(double core_radius);

/// The full scattering map in particle coordinates: F^{-1} G F with displacement F^{-1} D.
AffineSymplecticMap scattering_map(const MassFractions &mu, double core_radius);

/// L sigma L^T. The displacement does not enter.
CovarianceMatrix4 transform_covariance(const CovarianceMatrix4 &sigma, const AffineSymplecticMap &map);

/// Closed-form blocks of the scattered covariance matrix (all diagonal).
TwoModeBlocks closed_form_blocks(const MassFractions &mu, double sigma1_sq, double sigma2_sq);

/// sqrt(det A) for a reduced one-mode block.
double d_from_block(const Mat2 &block_a);

/// d^2 = 4 mu1^2 mu2^2 + dmu^2 [dmu^2/4 + mu1^2 s1/s2 + mu2^2 s2/s1].
double d_closed_form(const MassFractions &mu, double sigma1_sq, double sigma2_sq);

/// (d + 1/2) log2(d + 1/2) - (d - 1/2) log2(d - 1/2), with 0 log 0 = 0.
double entropy_from_d(double d);

/// 1 / (2 d)
double purity_from_d(double d);

} // namespace hardcore
