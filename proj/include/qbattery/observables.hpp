#pragma once

#include <array>

#include "qbattery/battery.hpp"
#include "qbattery/linalg.hpp"

namespace qbattery {

struct ChargeReport {
    double ergotropy = 0.0;      // hbar Omega0
    double power = 0.0;          // hbar Omega0^2
    double power_ratio = 0.0;    // P / P_max
    std::array<double, 3> populations{};
};

/// tr[H0 rho].
double energy(const DensityMatrix& rho, const Spectrum& spectrum);
/// Energy above the ground level, tr[H0 rho] - omega1.
double ergotropy(const DensityMatrix& rho, const Spectrum& spectrum);
/// Mean charging power C(tau) / tau. Throws InputError for tau <= 0.
double power(double ergotropy_at_tau, double tau);
/// Speed-limit power bound pi / (2 (omega3 - omega1)), hbar = Omega0 = 1.
double p_max(const Spectrum& spectrum);

ChargeReport charge_report(const DensityMatrix& rho_at_tau, const Spectrum& spectrum, double tau);

}  // namespace qbattery
