#pragma once

#include "hardcore/gaussian_core.hpp"

#include <string_view>

namespace hardcore {

/// Where the packets start and how fast they approach. Particle 1 sits at +q1 moving
/// with -momentum, particle 2 at -q2 moving with +momentum.
struct Kinematics {
    double q1;
    double q2;
    double momentum;
    double core_radius = 0.0;
};

/// A validated two-packet hard-core scattering scenario.
///
/// Masses are kept as fractions plus a total mass; only the fractions enter the
/// asymptotic entanglement, the total mass sets the time scale of free evolution.
class ScatterParams {
  public:
    ScatterParams(MassFractions mu, double sigma1_sq, double sigma2_sq, const Kinematics &kin,
                  double total_mass = 1.0);

    static ScatterParams from_masses(double m1, double m2, double sigma1_sq, double sigma2_sq,
                                     const Kinematics &kin);

    const MassFractions &mu() const noexcept { return mu_; }
    double total_mass() const noexcept { return total_mass_; }
    double mass1() const noexcept { return mu_.mu1() * total_mass_; }
    double mass2() const noexcept { return mu_.mu2() * total_mass_; }
    double reduced_mass() const noexcept { return mass1() * mass2() / total_mass_; }

    const GaussianPacket &packet1() const noexcept { return packet1_; }
    const GaussianPacket &packet2() const noexcept { return packet2_; }
    double sigma1_sq() const noexcept { return packet1_.width_sq; }
    double sigma2_sq() const noexcept { return packet2_.width_sq; }
    double q1() const noexcept { return packet1_.center; }
    double q2() const noexcept { return -packet2_.center; }
    double momentum() const noexcept { return packet2_.momentum; }
    double core_radius() const noexcept { return core_radius_; }

    /// Time at which the mean relative coordinate reaches the core, (q1 + q2 - a) M_r / K.
    double collision_time() const noexcept;

  private:
    MassFractions mu_;
    double total_mass_;
    GaussianPacket packet1_;
    GaussianPacket packet2_;
    double core_radius_;
};

enum class ZeroEntanglement { EqualMass, WidthMassBalance, None };

std::string_view to_string(ZeroEntanglement kind);

constexpr double default_zero_tolerance = 1e-9;

/// Asymptotic entanglement after the collision. Depends only on mu and sigma1^2/sigma2^2.
EntanglementResult asymptotic_entanglement(const ScatterParams &params);

/// Which of the two no-entanglement conditions holds, if any. EqualMass wins ties.
/// EqualMass compares |mu1 - mu2| <= tol; WidthMassBalance compares
/// |mu1 s1 - mu2 s2| <= tol * max(mu1 s1, mu2 s2).
ZeroEntanglement is_zero_entanglement(const MassFractions &mu, double sigma1_sq, double sigma2_sq,
                                      double tol = default_zero_tolerance);
ZeroEntanglement is_zero_entanglement(const ScatterParams &params, double tol = default_zero_tolerance);

/// Leading large-width-ratio term |2 mu1 - 1| mu1 sigma1/sigma2. Accepts the closed
/// interval limit mu1 = 1.
double d_asymptotic(double mu1, double width_ratio);
double d_asymptotic(const MassFractions &mu, double width_ratio);

} // namespace hardcore
