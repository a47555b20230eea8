#pragma once

// Geometry of the constant-amplitude ellipse x^T M x = 1 of the scattered
// two-particle Gaussian, where M = L^T Sigma L with Sigma = diag(1/s1, 1/s2) the
// initial form and L = [[dmu, 2 mu2], [2 mu1, -dmu]] the position part of the
// scattering map. det L = -1, so det M = det Sigma and the ellipse area is preserved.

#include "hardcore/gaussian_core.hpp"

#include <vector>

namespace hardcore {

/// Symmetric positive-definite 2x2 matrix.
class QuadraticForm2 {
  public:
    explicit QuadraticForm2(const Mat2 &entries);

    const Mat2 &entries() const noexcept { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }
    double evaluate(const Vec2 &x) const { return x.dot(entries_ * x); }

  private:
    Mat2 entries_;
};

/// Semi-axes and tilt of an ellipse centered at the origin. angle_rad is the
/// direction of the semi-major axis measured from the x1 axis, in [0, pi).
struct EllipseShape {
    EllipseShape(double semi_major, double semi_minor, double angle_rad);

    double semi_major;
    double semi_minor;
    double angle_rad;

    double area() const;
};

struct ApproxEllipse {
    EllipseShape shape;
    /// False when sigma1/sigma2 < 10, where the large-ratio approximation is not meant to hold.
    bool valid;
};

/// Entries: M11 = dmu^2/s1 + 4 mu1^2/s2, M22 = 4 mu2^2/s1 + dmu^2/s2,
/// M12 = 2 dmu (mu2/s1 - mu1/s2).
QuadraticForm2 matrix_m(const MassFractions &mu, double sigma1_sq, double sigma2_sq);

/// The same matrix assembled as L^T Sigma L.
QuadraticForm2 matrix_m_factored(const MassFractions &mu, double sigma1_sq, double sigma2_sq);

Mat2 transfer_matrix_l(const MassFractions &mu);
QuadraticForm2 initial_form(double sigma1_sq, double sigma2_sq);

/// A = 1/sqrt(lambda_min), B = 1/sqrt(lambda_max); angle from the lambda_min eigenvector.
/// A circle gets angle 0.
EllipseShape ellipse_from_form(const QuadraticForm2 &m);

/// 8x^2 - 4x + 1
double q_polynomial(double x);

/// Large-width-ratio approximation: A = sqrt(Q(mu1)) sigma1, B = sigma2 / sqrt(Q(mu1)),
/// angle = arctan(2 mu1 / (2 mu1 - 1)) mapped to [0, pi).
ApproxEllipse approx_final_ellipse(const MassFractions &mu, double sigma1, double sigma2);

/// Angle of the approximate semi-major axis on its own, valid for mu1 in [0, 1].
double approx_angle(double mu1);

/// n points on the boundary, uniformly spaced in the parametric angle.
std::vector<Vec2> boundary_points(const EllipseShape &shape, int n);

} // namespace hardcore
