#include "hardcore/ellipse_geometry.hpp"

#include "hardcore/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace hardcore {

namespace {

constexpr double pi = std::numbers::pi;

double normalize_angle(double angle) {
    double a = std::fmod(angle, pi);
    if (a < 0.0)
        a += pi;
    if (a >= pi)
        a = 0.0;
    return a;
}

void require_positive(double v, const char *name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be positive and finite");
}

} // namespace

QuadraticForm2::QuadraticForm2(const Mat2 &entries) : entries_(entries) {
    if (!entries_.allFinite())
        throw DomainError("quadratic form has non-finite entries");
    if (std::abs(entries_(0, 1) - entries_(1, 0)) > 1e-12 * std::max(1.0, entries_.cwiseAbs().maxCoeff()))
        throw DomainError("quadratic form is not symmetric");
    // Sylvester's criterion.
    if (!(entries_(0, 0) > 0.0) || !(entries_.determinant() > 0.0))
        throw DomainError("quadratic form is not positive definite");
}

EllipseShape::EllipseShape(double semi_major_, double semi_minor_, double angle_rad_)
    : semi_major(semi_major_), semi_minor(semi_minor_), angle_rad(angle_rad_) {
    if (!(semi_minor > 0.0) || !(semi_major >= semi_minor))
        throw InvariantViolation("ellipse needs semi_major >= semi_minor > 0");
    if (!(angle_rad >= 0.0 && angle_rad < pi))
        throw InvariantViolation("ellipse angle must lie in [0, pi)");
}

double EllipseShape::area() const { return pi * semi_major * semi_minor; }

QuadraticForm2 matrix_m(const MassFractions &mu, double sigma1_sq, double sigma2_sq) {
    require_positive(sigma1_sq, "sigma1^2");
    require_positive(sigma2_sq, "sigma2^2");
    const double m1 = mu.mu1();
    const double m2 = mu.mu2();
    const double dm = mu.delta();
    Mat2 m;
    m(0, 0) = dm * dm / sigma1_sq + 4.0 * m1 * m1 / sigma2_sq;
    m(1, 1) = 4.0 * m2 * m2 / sigma1_sq + dm * dm / sigma2_sq;
    m(0, 1) = m(1, 0) = 2.0 * dm * (m2 / sigma1_sq - m1 / sigma2_sq);
    return QuadraticForm2(m);
}

Mat2 transfer_matrix_l(const MassFractions &mu) {
    Mat2 l;
    l << mu.delta(), 2.0 * mu.mu2(), 2.0 * mu.mu1(), -mu.delta();
    return l;
}

QuadraticForm2 initial_form(double sigma1_sq, double sigma2_sq) {
    require_positive(sigma1_sq, "sigma1^2");
    require_positive(sigma2_sq, "sigma2^2");
    return QuadraticForm2(Vec2(1.0 / sigma1_sq, 1.0 / sigma2_sq).asDiagonal().toDenseMatrix());
}

QuadraticForm2 matrix_m_factored(const MassFractions &mu, double sigma1_sq, double sigma2_sq) {
    const Mat2 l = transfer_matrix_l(mu);
    const Mat2 m = l.transpose() * initial_form(sigma1_sq, sigma2_sq).entries() * l;
    return QuadraticForm2(0.5 * (m + m.transpose()));
}

EllipseShape ellipse_from_form(const QuadraticForm2 &form) {
    const Mat2 &m = form.entries();
    const double a = m(0, 0);
    const double c = m(1, 1);
    const double b = m(0, 1);
    const double half_gap = std::hypot(0.5 * (a - c), b);
    const double lambda_max = 0.5 * (a + c) + half_gap;
    // det / lambda_max avoids the cancellation in tr/2 - half_gap for elongated ellipses.
    const double lambda_min = m.determinant() / lambda_max;
    const double semi_major = 1.0 / std::sqrt(lambda_min);
    const double semi_minor = 1.0 / std::sqrt(lambda_max);
    if (lambda_max - lambda_min <= 1e-12 * lambda_max)
        return EllipseShape(semi_major, semi_major, 0.0);
    // 0.5 atan2(2b, a - c) is the lambda_max direction; the major axis is perpendicular.
    const double angle = normalize_angle(0.5 * std::atan2(2.0 * b, a - c) + 0.5 * pi);
    return EllipseShape(semi_major, semi_minor, angle);
}

double q_polynomial(double x) { return 8.0 * x * x - 4.0 * x + 1.0; }

double approx_angle(double mu1) {
    // Direction of L (1, 0)^T = (2 mu1 - 1, 2 mu1), which lands in (0, pi) for mu1 > 0.
    return normalize_angle(std::atan2(2.0 * mu1, 2.0 * mu1 - 1.0));
}

ApproxEllipse approx_final_ellipse(const MassFractions &mu, double sigma1, double sigma2) {
    require_positive(sigma1, "sigma1");
    require_positive(sigma2, "sigma2");
    const double q = std::sqrt(q_polynomial(mu.mu1()));
    double major = q * sigma1;
    double minor = sigma2 / q;
    double angle = approx_angle(mu.mu1());
    const bool valid = sigma1 / sigma2 >= 10.0;
    if (major < minor) {
        std::swap(major, minor);
        angle = normalize_angle(angle + 0.5 * pi);
    }
    return {EllipseShape(major, minor, angle), valid};
}

std::vector<Vec2> boundary_points(const EllipseShape &shape, int n) {
    if (n < 1)
        throw DomainError("boundary point count must be >= 1");
    const Vec2 u(std::cos(shape.angle_rad), std::sin(shape.angle_rad));
    const Vec2 v(-u.y(), u.x());
    std::vector<Vec2> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double phi = 2.0 * pi * k / n;
        points.emplace_back(shape.semi_major * std::cos(phi) * u + shape.semi_minor * std::sin(phi) * v);
    }
    return points;
}

} // namespace hardcore
