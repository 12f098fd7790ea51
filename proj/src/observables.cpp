#include "qbattery/observables.hpp"

#include <cmath>
#include <numbers>

namespace qbattery {

double energy(const DensityMatrix& rho, const Spectrum& spectrum) {
    const auto p = rho.populations();
    return spectrum.omega1() * p[0] + spectrum.omega2() * p[1] + spectrum.omega3() * p[2];
}

double ergotropy(const DensityMatrix& rho, const Spectrum& spectrum) {
    return energy(rho, spectrum) - spectrum.omega1();
}

double power(double ergotropy_at_tau, double tau) {
    if (!(tau > 0.0)) throw InputError("power: tau must be positive");
    return ergotropy_at_tau / tau;
}

double p_max(const Spectrum& spectrum) { return std::numbers::pi / (2.0 * spectrum.gap31()); }

ChargeReport charge_report(const DensityMatrix& rho_at_tau, const Spectrum& spectrum, double tau) {
    ChargeReport r;
    r.ergotropy = ergotropy(rho_at_tau, spectrum);
    r.power = power(r.ergotropy, tau);
    r.power_ratio = r.power / p_max(spectrum);
    r.populations = rho_at_tau.populations();
    return r;
}

}  // namespace qbattery
