#include "hardcore/errors.hpp"
#include "hardcore/scattering.hpp"

#include "doctest.h"
#include "test_support.hpp"

#include <cmath>

using namespace hardcore;
using hardcore::testing::Draws;

namespace {

ScatterParams make(double mu1, double s1, double s2, double k = 2.0, double q = 50.0, double a = 0.0) {
    return ScatterParams(MassFractions::from_fraction(mu1), s1, s2, Kinematics{q, q, k, a});
}

} // namespace

TEST_SUITE("scattering") {

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make(0.3, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(make(0.3, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(make(0.3, 1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(make(0.3, 1.0, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(make(0.3, 1.0, 1.0, 2.0, 1.0, 1.0), DomainError);  // packets start inside the core
    CHECK_THROWS_AS(make(0.3, 1.0, 1.0, 2.0, 5.0, -0.1), DomainError);
    CHECK_THROWS_AS(ScatterParams(MassFractions::from_fraction(0.3), 1.0, 1.0, Kinematics{5, 5, 1, 0}, 0.0),
                    DomainError);
}

TEST_CASE("packet geometry") {
    const auto p = ScatterParams::from_masses(1.0, 3.0, 100.0, 1.0, Kinematics{81, 81, 2, 1});
    CHECK(p.mu().mu1() == 0.25);
    CHECK(p.total_mass() == 4.0);
    CHECK(p.mass1() == 1.0);
    CHECK(p.mass2() == 3.0);
    CHECK(p.reduced_mass() == doctest::Approx(0.75));
    CHECK(p.packet1().center == 81.0);
    CHECK(p.packet1().momentum == -2.0);
    CHECK(p.packet2().center == -81.0);
    CHECK(p.packet2().momentum == 2.0);
    CHECK(p.q2() == 81.0);
    // (81 + 81 - 1) * 0.75 / 2
    CHECK(p.collision_time() == doctest::Approx(60.375));
}

TEST_CASE("asymptotic entanglement examples") {
    SUBCASE("equal masses, unequal widths") {
        const auto r = asymptotic_entanglement(make(0.5, 9.0, 1.0));
        CHECK(r.d_value == 0.5);
        CHECK(r.entropy_bits == 0.0);
        CHECK(r.purity == 1.0);
    }
    SUBCASE("width-mass balance") {
        const auto r = asymptotic_entanglement(make(0.25, 3.0, 1.0));
        CHECK(std::abs(r.d_value - 0.5) <= 1e-12);
        CHECK(r.entropy_bits <= 1e-12);
    }
    SUBCASE("mu1 = 1/4, ratio 10") {
        const auto r = asymptotic_entanglement(make(0.25, 100.0, 1.0));
        // mpmath, 30 digits
        CHECK(r.d_value == doctest::Approx(1.3115472732616236).epsilon(1e-14));
        CHECK(r.entropy_bits == doctest::Approx(1.7973800172912210).epsilon(1e-12));
        CHECK(r.purity == doctest::Approx(0.38122911022229045).epsilon(1e-13));
    }
}

TEST_CASE("asymptotic result ignores momentum, start positions and core radius") {
    const double ref = asymptotic_entanglement(make(0.31, 40.0, 2.0)).d_value;
    for (double k : {0.1, 2.0, 30.0})
        for (double q : {20.0, 100.0})
            for (double a : {0.0, 0.5, 10.0})
                CHECK(asymptotic_entanglement(make(0.31, 40.0, 2.0, k, q, a)).d_value == ref);

    // Total mass only rescales time.
    const auto heavy = ScatterParams(MassFractions::from_fraction(0.31), 40.0, 2.0, Kinematics{50, 50, 2, 0}, 7.0);
    CHECK(asymptotic_entanglement(heavy).d_value == ref);
}

TEST_CASE("zero-entanglement classification") {
    const auto half = MassFractions::from_fraction(0.5);
    const auto quarter = MassFractions::from_fraction(0.25);
    CHECK(is_zero_entanglement(half, 9.0, 1.0) == ZeroEntanglement::EqualMass);
    CHECK(is_zero_entanglement(quarter, 3.0, 1.0) == ZeroEntanglement::WidthMassBalance);
    CHECK(is_zero_entanglement(quarter, 100.0, 1.0) == ZeroEntanglement::None);
    // Equal masses and equal widths satisfy both; equal mass wins.
    CHECK(is_zero_entanglement(half, 1.0, 1.0) == ZeroEntanglement::EqualMass);
    CHECK(is_zero_entanglement(make(0.5, 4.0, 1.0)) == ZeroEntanglement::EqualMass);

    SUBCASE("tolerance") {
        CHECK(is_zero_entanglement(MassFractions::from_fraction(0.5 + 1e-6), 9.0, 1.0) == ZeroEntanglement::None);
        CHECK(is_zero_entanglement(MassFractions::from_fraction(0.5 + 1e-6), 9.0, 1.0, 1e-5) ==
              ZeroEntanglement::EqualMass);
        CHECK_THROWS_AS(is_zero_entanglement(half, 1.0, 1.0, -1.0), DomainError);
    }
    SUBCASE("names") {
        CHECK(to_string(ZeroEntanglement::EqualMass) == "EqualMass");
        CHECK(to_string(ZeroEntanglement::WidthMassBalance) == "WidthMassBalance");
        CHECK(to_string(ZeroEntanglement::None) == "None");
    }
}

TEST_CASE("zero-entanglement states have vanishing entropy over draws") {
    Draws draws(41);
    for (int k = 0; k < 200; ++k) {
        const double mu1 = draws.fraction();
        const double s1 = draws.log_uniform(1e-2, 1e2);
        const double s2 = mu1 * s1 / (1.0 - mu1);
        const auto mu = MassFractions::from_fraction(mu1);
        REQUIRE(is_zero_entanglement(mu, s1, s2) != ZeroEntanglement::None);
        const auto r = EntanglementResult::from_d(d_closed_form(mu, s1, s2));
        CHECK(std::abs(r.d_value - 0.5) <= 1e-12);
        CHECK(r.entropy_bits <= 1e-9);
    }
}

TEST_CASE("d asymptotic") {
    CHECK(d_asymptotic(0.25, 10.0) == 1.25);
    CHECK(d_asymptotic(1.0, 10.0) == 10.0);
    CHECK(d_asymptotic(1.0, 10.0) / d_asymptotic(0.25, 10.0) == 8.0);
    CHECK(d_asymptotic(0.5, 10.0) == 0.0);
    CHECK(d_asymptotic(MassFractions::from_fraction(0.25), 10.0) == 1.25);
    CHECK_THROWS_AS(d_asymptotic(0.0, 10.0), DomainError);
    CHECK_THROWS_AS(d_asymptotic(1.1, 10.0), DomainError);
    CHECK_THROWS_AS(d_asymptotic(0.5, 0.0), DomainError);

    SUBCASE("local maximum of |2 mu1 - 1| mu1 below one half sits at 1/4") {
        const double peak = d_asymptotic(0.25, 10.0);
        for (double eps : {1e-3, 1e-2, 0.1})
            CHECK((d_asymptotic(0.25 - eps, 10.0) < peak && d_asymptotic(0.25 + eps, 10.0) < peak));
    }
}

TEST_CASE("asymptote tracks the exact d within 15% where it is not small") {
    for (double ratio : {10.0, 30.0, 100.0}) {
        for (int i = 0; i < 99; ++i) {
            const double mu1 = 0.01 + 0.98 * i / 98.0;
            if (std::abs(2 * mu1 - 1) * mu1 < 0.1)
                continue;
            const double exact = d_closed_form(MassFractions::from_fraction(mu1), ratio * ratio, 1.0);
            CHECK(std::abs(exact - d_asymptotic(mu1, ratio)) <= 0.15 * exact);
        }
    }
}

} // TEST_SUITE
