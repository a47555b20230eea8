#include "hardcore/scattering.hpp"

#include "hardcore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hardcore {

namespace {

const Kinematics &validated(const Kinematics &kin) {
    if (!(kin.core_radius >= 0.0) || !std::isfinite(kin.core_radius))
        throw DomainError("core radius a must be >= 0");
    if (!(kin.momentum > 0.0) || !std::isfinite(kin.momentum))
        throw DomainError("momentum K must be > 0 so the packets approach each other");
    if (!(kin.q1 > kin.core_radius) || !std::isfinite(kin.q1))
        throw DomainError("packet 1 must start outside the core: need Q1 > a");
    if (!(kin.q2 > kin.core_radius) || !std::isfinite(kin.q2))
        throw DomainError("packet 2 must start outside the core: need Q2 > a");
    return kin;
}

} // namespace

ScatterParams::ScatterParams(MassFractions mu, double sigma1_sq, double sigma2_sq, const Kinematics &kin,
                             double total_mass)
    : mu_(mu), total_mass_(total_mass), packet1_(validated(kin).q1, -kin.momentum, sigma1_sq),
      packet2_(-kin.q2, kin.momentum, sigma2_sq), core_radius_(kin.core_radius) {
    if (!(total_mass_ > 0.0) || !std::isfinite(total_mass_))
        throw DomainError("total mass must be positive");
}

ScatterParams ScatterParams::from_masses(double m1, double m2, double sigma1_sq, double sigma2_sq,
                                         const Kinematics &kin) {
    return ScatterParams(MassFractions::from_masses(m1, m2), sigma1_sq, sigma2_sq, kin, m1 + m2);
}

double ScatterParams::collision_time() const noexcept {
    return (q1() + q2() - core_radius_) * reduced_mass() / momentum();
}

std::string_view to_string(ZeroEntanglement kind) {
    switch (kind) {
    case ZeroEntanglement::EqualMass:
        return "EqualMass";
    case ZeroEntanglement::WidthMassBalance:
        return "WidthMassBalance";
    case ZeroEntanglement::None:
        return "None";
    }
    return "None";
}

EntanglementResult asymptotic_entanglement(const ScatterParams &params) {
    return EntanglementResult::from_d(d_closed_form(params.mu(), params.sigma1_sq(), params.sigma2_sq()));
}

ZeroEntanglement is_zero_entanglement(const MassFractions &mu, double sigma1_sq, double sigma2_sq, double tol) {
    if (!(tol >= 0.0))
        throw DomainError("tolerance must be >= 0");
    if (std::abs(mu.mu1() - mu.mu2()) <= tol)
        return ZeroEntanglement::EqualMass;
    const double w1 = mu.mu1() * sigma1_sq;
    const double w2 = mu.mu2() * sigma2_sq;
    if (std::abs(w1 - w2) <= tol * std::max(w1, w2))
        return ZeroEntanglement::WidthMassBalance;
    return ZeroEntanglement::None;
}

ZeroEntanglement is_zero_entanglement(const ScatterParams &params, double tol) {
    return is_zero_entanglement(params.mu(), params.sigma1_sq(), params.sigma2_sq(), tol);
}

double d_asymptotic(double mu1, double width_ratio) {
    if (!(mu1 > 0.0 && mu1 <= 1.0))
        throw DomainError("mu1 must lie in (0, 1] (got " + std::to_string(mu1) + ")");
    if (!(width_ratio > 0.0))
        throw DomainError("width ratio sigma1/sigma2 must be positive");
    return std::abs(2.0 * mu1 - 1.0) * mu1 * width_ratio;
}

double d_asymptotic(const MassFractions &mu, double width_ratio) {
    return d_asymptotic(mu.mu1(), width_ratio);
}

} // namespace hardcore
