#include "hardcore/ellipse_geometry.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/gaussian_core.hpp"

#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace hardcore;
using hardcore::testing::Draws;
using hardcore::testing::rel_diff;
using std::numbers::pi;

namespace {

double degrees(double rad) { return rad * 180.0 / pi; }

// Smallest distance between two axis directions, modulo pi.
double axis_distance(double a, double b) {
    const double d = std::fmod(std::abs(a - b), pi);
    return std::min(d, pi - d);
}

} // namespace

TEST_SUITE("ellipse_geometry") {

TEST_CASE("quadratic form validation") {
    CHECK_NOTHROW(QuadraticForm2(Mat2::Identity()));
    Mat2 asym;
    asym << 1.0, 0.2, 0.1, 1.0;
    CHECK_THROWS_AS(QuadraticForm2{asym}, DomainError);
    Mat2 indefinite;
    indefinite << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(QuadraticForm2{indefinite}, DomainError);
    CHECK(QuadraticForm2(Mat2::Identity()).evaluate(Vec2(3.0, 4.0)) == 25.0);
}

TEST_CASE("ellipse shape invariants") {
    CHECK_THROWS_AS(EllipseShape(1.0, 2.0, 0.0), InvariantViolation);
    CHECK_THROWS_AS(EllipseShape(1.0, 0.0, 0.0), InvariantViolation);
    CHECK_THROWS_AS(EllipseShape(2.0, 1.0, pi), InvariantViolation);
    CHECK_THROWS_AS(EllipseShape(2.0, 1.0, -0.1), InvariantViolation);
    CHECK(EllipseShape(2.0, 1.0, 0.0).area() == doctest::Approx(2.0 * pi));
}

TEST_CASE("q polynomial") {
    CHECK(q_polynomial(0.25) == 0.5);
    CHECK(q_polynomial(1.0) == 5.0);
    CHECK(q_polynomial(0.0) == 1.0);
    CHECK(q_polynomial(0.5) == 1.0);
    // Minimum 1/2 at x = 1/4.
    for (double x = 0.0; x <= 1.0; x += 0.01)
        CHECK(q_polynomial(x) >= 0.5);
}

TEST_CASE("transfer matrix") {
    Draws draws(7);
    for (int k = 0; k < 50; ++k) {
        const Mat2 l = transfer_matrix_l(MassFractions::from_fraction(draws.fraction()));
        CHECK(l.determinant() == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK((l * l - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("explicit M equals L^T Sigma L") {
    Draws draws(13);
    for (int k = 0; k < 100; ++k) {
        const auto mu = MassFractions::from_fraction(draws.fraction());
        const double s1 = draws.log_uniform(1e-2, 1e4);
        const double s2 = draws.log_uniform(1e-2, 1e2);
        const Mat2 explicit_m = matrix_m(mu, s1, s2).entries();
        const Mat2 factored = matrix_m_factored(mu, s1, s2).entries();
        CHECK((explicit_m - factored).cwiseAbs().maxCoeff() <= 1e-12 * explicit_m.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("area preservation") {
    Draws draws(19);
    for (int k = 0; k < 100; ++k) {
        const auto mu = MassFractions::from_fraction(draws.fraction());
        const double s1 = draws.log_uniform(1e-2, 1e4);
        const double s2 = draws.log_uniform(1e-2, 1e2);
        const QuadraticForm2 m = matrix_m(mu, s1, s2);
        CHECK(std::abs(m.entries().determinant() * s1 * s2 - 1.0) <= 1e-10);
        CHECK(rel_diff(ellipse_from_form(m).area(), ellipse_from_form(initial_form(s1, s2)).area()) <= 1e-10);
    }
}

TEST_CASE("factorization criterion: M12 = 0 exactly at the zero-entanglement loci") {
    CHECK(matrix_m(MassFractions::from_fraction(0.5), 7.0, 2.0)(0, 1) == 0.0);
    CHECK(std::abs(matrix_m(MassFractions::from_fraction(0.25), 3.0, 1.0)(0, 1)) <= 1e-15);
    CHECK(std::abs(matrix_m(MassFractions::from_fraction(0.25), 100.0, 1.0)(0, 1)) > 0.1);
}

TEST_CASE("ellipse from form") {
    SUBCASE("axis-aligned") {
        const auto e = ellipse_from_form(initial_form(9.0, 1.0));
        CHECK(e.semi_major == doctest::Approx(3.0));
        CHECK(e.semi_minor == doctest::Approx(1.0));
        CHECK(e.angle_rad == 0.0);
        const auto tall = ellipse_from_form(initial_form(1.0, 4.0));
        CHECK(tall.semi_major == doctest::Approx(2.0));
        CHECK(tall.angle_rad == doctest::Approx(pi / 2));
    }
    SUBCASE("circle gets angle zero") {
        const auto e = ellipse_from_form(QuadraticForm2(4.0 * Mat2::Identity()));
        CHECK(e.semi_major == 0.5);
        CHECK(e.semi_minor == 0.5);
        CHECK(e.angle_rad == 0.0);
    }
    SUBCASE("agrees with an eigen decomposition") {
        Draws draws(23);
        for (int k = 0; k < 100; ++k) {
            const auto mu = MassFractions::from_fraction(draws.fraction());
            const QuadraticForm2 m = matrix_m(mu, draws.log_uniform(1e-1, 1e4), draws.log_uniform(1e-1, 1e1));
            const Eigen::SelfAdjointEigenSolver<Mat2> eig(m.entries());
            const auto e = ellipse_from_form(m);
            CHECK(rel_diff(e.semi_major, 1.0 / std::sqrt(eig.eigenvalues()(0))) <= 1e-9);
            CHECK(rel_diff(e.semi_minor, 1.0 / std::sqrt(eig.eigenvalues()(1))) <= 1e-9);
            const Vec2 v = eig.eigenvectors().col(0);
            CHECK(axis_distance(e.angle_rad, std::atan2(v.y(), v.x())) <= 1e-8);
        }
    }
    SUBCASE("boundary points lie on the ellipse") {
        const QuadraticForm2 m = matrix_m(MassFractions::from_fraction(0.3), 100.0, 1.0);
        for (const Vec2 &p : boundary_points(ellipse_from_form(m), 64))
            CHECK(std::abs(m.evaluate(p) - 1.0) <= 1e-10);
        CHECK_THROWS_AS(boundary_points(ellipse_from_form(m), 0), DomainError);
    }
}

TEST_CASE("approximate angle") {
    CHECK(std::abs(approx_angle(0.25) - 3.0 * pi / 4.0) <= 4e-16);
    CHECK(approx_angle(0.5) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(degrees(approx_angle(1.0)) == doctest::Approx(63.4349488229).epsilon(1e-11));
    CHECK(approx_angle(1e-9) == doctest::Approx(pi).epsilon(1e-8));
    CHECK(approx_angle(1e-9) < pi);

    SUBCASE("ranges") {
        for (int i = 1; i < 100; ++i) {
            const double mu1 = i / 100.0;
            const double theta = approx_angle(mu1);
            if (mu1 < 0.5)
                CHECK((theta > pi / 2 && theta < pi));
            else if (mu1 > 0.5)
                CHECK((theta > std::atan(2.0) && theta < pi / 2));
        }
    }
}

TEST_CASE("approximate final ellipse") {
    const auto a = approx_final_ellipse(MassFractions::from_fraction(0.25), 10.0, 1.0);
    CHECK(a.valid);
    CHECK(a.shape.semi_major == doctest::Approx(10.0 * std::sqrt(0.5)));
    CHECK(a.shape.semi_minor == doctest::Approx(1.0 / std::sqrt(0.5)));
    CHECK(a.shape.angle_rad == doctest::Approx(3.0 * pi / 4.0));
    CHECK_FALSE(approx_final_ellipse(MassFractions::from_fraction(0.25), 5.0, 1.0).valid);
    // Preserves the area exactly: sqrt(Q) sigma1 * sigma2 / sqrt(Q).
    CHECK(a.shape.area() == doctest::Approx(pi * 10.0));
}

TEST_CASE("exact geometry converges to the approximation as the width ratio grows") {
    const auto mu = MassFractions::from_fraction(0.8);
    double prev_axis = 1.0, prev_angle = 1.0;
    for (double ratio : {10.0, 100.0, 1000.0}) {
        const auto exact = ellipse_from_form(matrix_m(mu, ratio * ratio, 1.0));
        const auto approx = approx_final_ellipse(mu, ratio, 1.0).shape;
        const double axis_err = std::max(rel_diff(exact.semi_major, approx.semi_major),
                                         rel_diff(exact.semi_minor, approx.semi_minor));
        const double angle_err = axis_distance(exact.angle_rad, approx.angle_rad);
        CHECK(axis_err < prev_axis);
        CHECK(angle_err < prev_angle);
        prev_axis = axis_err;
        prev_angle = angle_err;
    }
    CHECK(prev_axis < 1e-6);
}

TEST_CASE("axis ratio over width ratio tends to Q with a 1/ratio^2 correction") {
    for (int i = 1; i < 20; ++i) {
        const double mu1 = i / 20.0;
        const auto mu = MassFractions::from_fraction(mu1);
        const auto err = [&](double ratio) {
            const auto e = ellipse_from_form(matrix_m(mu, ratio * ratio, 1.0));
            return rel_diff(e.semi_major / e.semi_minor / ratio, q_polynomial(mu1));
        };
        CHECK(err(100.0) <= 1e-3);
        CHECK(err(1000.0) <= 1e-5);
        CHECK(err(1000.0) <= 0.02 * err(100.0));
    }
}

TEST_CASE("exact tilt close to arctan 2 at mu1 = 0.99, ratio 1000") {
    const auto e = ellipse_from_form(matrix_m(MassFractions::from_fraction(0.99), 1e6, 1.0));
    CHECK(std::abs(degrees(e.angle_rad) - degrees(std::atan(2.0))) <= 0.5);
}

} // TEST_SUITE
