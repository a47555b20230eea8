#include "hardcore/gaussian_core.hpp"

#include "hardcore/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace hardcore {

namespace {

constexpr double symmetry_tol = 1e-12;
constexpr double uncertainty_tol = -1e-10;
constexpr double symplectic_tol = 1e-12;
constexpr double det_floor = 0.25;
constexpr double det_clamp_window = 1e-12;

void require_positive_width(double width_sq, const char *name) {
    if (!(width_sq > 0.0) || !std::isfinite(width_sq))
        throw DomainError(std::string(name) + " must be a positive finite width^2 (got " +
                          std::to_string(width_sq) + ")");
}

// d from d^2, with the roundoff floor at the pure-state boundary d = 1/2.
double d_from_det(double det) {
    if (det < det_floor) {
        if (det_floor - det > det_clamp_window)
            throw InvariantViolation("det(A) = " + std::to_string(det) +
                                     " is below 1/4: reduced state violates the uncertainty relation");
        return 0.5;
    }
    return std::sqrt(det);
}

} // namespace

MassFractions MassFractions::from_fraction(double mu1) {
    if (!(mu1 > 0.0 && mu1 < 1.0))
        throw DomainError("mass fraction mu1 must lie in (0, 1) (got " + std::to_string(mu1) + ")");
    return MassFractions(mu1);
}

MassFractions MassFractions::from_masses(double m1, double m2) {
    if (!(m1 > 0.0) || !(m2 > 0.0) || !std::isfinite(m1) || !std::isfinite(m2))
        throw DomainError("masses must be positive and finite");
    return from_fraction(m1 / (m1 + m2));
}

GaussianPacket::GaussianPacket(double center_, double momentum_, double width_sq_)
    : center(center_), momentum(momentum_), width_sq(width_sq_) {
    require_positive_width(width_sq, "packet width");
}

double GaussianPacket::normalization() const {
    return 1.0 / (std::sqrt(std::sqrt(width_sq)) * std::pow(std::numbers::pi, 0.25));
}

const Mat4 &symplectic_form() {
    static const Mat4 j = [] {
        Mat4 m = Mat4::Zero();
        m(0, 1) = 1.0;
        m(1, 0) = -1.0;
        m(2, 3) = 1.0;
        m(3, 2) = -1.0;
        return m;
    }();
    return j;
}

CovarianceMatrix4::CovarianceMatrix4(const Mat4 &entries) : entries_(entries) {
    if (!entries_.allFinite())
        throw InvariantViolation("covariance matrix has non-finite entries");
    if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > symmetry_tol)
        throw InvariantViolation("covariance matrix is not symmetric");
    if (uncertainty_margin() < uncertainty_tol)
        throw InvariantViolation("covariance matrix violates the uncertainty relation sigma + iJ/2 >= 0");
}

double CovarianceMatrix4::uncertainty_margin() const {
    using CMat4 = Eigen::Matrix4cd;
    const CMat4 h = entries_.cast<std::complex<double>>() +
                    std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<CMat4> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

AffineSymplecticMap::AffineSymplecticMap(const Mat4 &linear, const Vec4 &displacement)
    : linear_(linear), displacement_(displacement) {
    if (symplectic_defect() > symplectic_tol)
        throw InvariantViolation("linear part is not symplectic (defect " +
                                 std::to_string(symplectic_defect()) + ")");
}

double AffineSymplecticMap::symplectic_defect() const {
    const Mat4 &j = symplectic_form();
    return (linear_.transpose() * j * linear_ - j).cwiseAbs().maxCoeff();
}

Mat4 TwoModeBlocks::assemble() const {
    Mat4 m;
    m << block_a, block_c, block_c.transpose(), block_b;
    return m;
}

TwoModeBlocks TwoModeBlocks::split(const CovarianceMatrix4 &sigma) {
    const Mat4 &m = sigma.entries();
    return {m.topLeftCorner<2, 2>(), m.bottomRightCorner<2, 2>(), m.topRightCorner<2, 2>()};
}

EntanglementResult EntanglementResult::from_d(double d) {
    return {d, entropy_from_d(d), purity_from_d(d)};
}

CovarianceMatrix4 initial_covariance(double sigma1_sq, double sigma2_sq) {
    require_positive_width(sigma1_sq, "sigma1^2");
    require_positive_width(sigma2_sq, "sigma2^2");
    Vec4 diag(sigma1_sq / 2.0, 1.0 / (2.0 * sigma1_sq), sigma2_sq / 2.0, 1.0 / (2.0 * sigma2_sq));
    return CovarianceMatrix4(diag.asDiagonal().toDenseMatrix());
}

AffineSymplecticMap com_relative_map(const MassFractions &mu) {
    const double m1 = mu.mu1();
    const double m2 = mu.mu2();
    Mat4 f;
    // clang-format off
    f << m1,  0.0, m2,  0.0,
         0.0, 1.0, 0.0, 1.0,
         1.0, 0.0, -1.0, 0.0,
         0.0, m2,  0.0, -m1;
    // clang-format on
    return AffineSymplecticMap(f, Vec4::Zero());
}

Mat4 com_relative_inverse(const MassFractions &mu) {
    const double m1 = mu.mu1();
    const double m2 = mu.mu2();
    Mat4 finv;
    // clang-format off
    finv << 1.0, 0.0, m2,  0.0,
            0.0, m1,  0.0, 1.0,
            1.0, 0.0, -m1, 0.0,
            0.0, m2,  0.0, -1.0;
    // clang-format on
    return finv;
}

AffineSymplecticMap reflection_map(double core_radius) {
    if (!(core_radius >= 0.0) || !std::isfinite(core_radius))
        throw DomainError("core radius must be >= 0 (got " + std::to_string(core_radius) + ")");
    const Mat4 g = Vec4(1.0, 1.0, -1.0, -1.0).asDiagonal().toDenseMatrix();
    return AffineSymplecticMap(g, Vec4(0.0, 0.0, 2.0 * core_radius, 0.0));
}

AffineSymplecticMap scattering_map(const MassFractions &mu, double core_radius) {
    const AffineSymplecticMap f = com_relative_map(mu);
    const AffineSymplecticMap g = reflection_map(core_radius);
    const Mat4 finv = com_relative_inverse(mu);
    return AffineSymplecticMap(finv * g.linear() * f.linear(), finv * g.displacement());
}

CovarianceMatrix4 transform_covariance(const CovarianceMatrix4 &sigma, const AffineSymplecticMap &map) {
    const Mat4 out = map.linear() * sigma.entries() * map.linear().transpose();
    // Symmetrize away the last-ulp asymmetry of the triple product.
    return CovarianceMatrix4(0.5 * (out + out.transpose()));
}

TwoModeBlocks closed_form_blocks(const MassFractions &mu, double sigma1_sq, double sigma2_sq) {
    require_positive_width(sigma1_sq, "sigma1^2");
    require_positive_width(sigma2_sq, "sigma2^2");
    const double m1 = mu.mu1();
    const double m2 = mu.mu2();
    const double dm = mu.delta();
    const double dm2 = dm * dm;
    const double s1 = sigma1_sq;
    const double s2 = sigma2_sq;

    TwoModeBlocks blocks;
    blocks.block_a = Vec2(2.0 * m2 * m2 * s2 + dm2 * s1 / 2.0, 2.0 * m1 * m1 / s2 + dm2 / (2.0 * s1))
                         .asDiagonal()
                         .toDenseMatrix();
    blocks.block_b = Vec2(2.0 * m1 * m1 * s1 + dm2 * s2 / 2.0, 2.0 * m2 * m2 / s1 + dm2 / (2.0 * s2))
                         .asDiagonal()
                         .toDenseMatrix();
    // Momentum entry is dmu (mu2/s1 - mu1/s2), linear in mu2.
    blocks.block_c = Vec2(dm * (m1 * s1 - m2 * s2), dm * (m2 / s1 - m1 / s2)).asDiagonal().toDenseMatrix();
    return blocks;
}

double d_from_block(const Mat2 &block_a) {
    if (!(block_a(0, 0) > 0.0 && block_a(1, 1) > 0.0))
        throw DomainError("reduced block must be positive definite");
    return d_from_det(block_a.determinant());
}

double d_closed_form(const MassFractions &mu, double sigma1_sq, double sigma2_sq) {
    require_positive_width(sigma1_sq, "sigma1^2");
    require_positive_width(sigma2_sq, "sigma2^2");
    const double m1 = mu.mu1();
    const double m2 = mu.mu2();
    const double dm2 = mu.delta() * mu.delta();
    const double ratio = sigma1_sq / sigma2_sq;
    const double d_sq =
        4.0 * m1 * m1 * m2 * m2 + dm2 * (dm2 / 4.0 + m1 * m1 * ratio + m2 * m2 / ratio);
    return d_from_det(d_sq);
}

double entropy_from_d(double d) {
    if (!(d >= 0.5))
        throw DomainError("entropy requires d >= 1/2 (got " + std::to_string(d) + ")");
    const double plus = d + 0.5;
    const double minus = d - 0.5;
    const double minus_term = minus > 0.0 ? minus * std::log2(minus) : 0.0;
    return plus * std::log2(plus) - minus_term;
}

double purity_from_d(double d) {
    if (!(d >= 0.5))
        throw DomainError("purity requires d >= 1/2 (got " + std::to_string(d) + ")");
    return 1.0 / (2.0 * d);
}

} // namespace hardcore
