#include "qbattery/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbattery {

namespace {

void require_direction(const Protocol& protocol, Direction expected, const char* op) {
    if (protocol.direction() != expected)
        throw InputError(std::string(op) + ": protocol direction must be " + std::string(to_string(expected)));
}

void require_domain(const Protocol& protocol, double t, const char* op) {
    if (!(t >= 0.0 && t <= protocol.end_time()))
        throw InputError(std::string(op) + ": time " + std::to_string(t) + " outside protocol domain");
}

}  // namespace

double phase_phi(const Protocol& protocol, double t, int panels) {
    require_domain(protocol, t, "phase_phi");
    if (panels < 2) throw InputError("phase_phi: need at least 2 quadrature panels");
    if (panels % 2 != 0) ++panels;

    const double ramp_end = std::min(t, protocol.tau());
    double phi = 0.0;
    if (ramp_end > 0.0) {
        const double h = ramp_end / panels;
        double odd = 0.0;
        double even = 0.0;
        for (int k = 1; k < panels; ++k) {
            const double v = protocol.mixing_scale(k * h);
            (k % 2 ? odd : even) += v;
        }
        phi = h / 3.0 * (protocol.mixing_scale(0.0) + 4.0 * odd + 2.0 * even + protocol.mixing_scale(ramp_end));
    }
    if (t > protocol.tau()) phi += protocol.mixing_scale(protocol.tau()) * (t - protocol.tau());
    return phi;
}

Vec3 state_unstable(const Protocol& protocol, double t, int panels) {
    require_direction(protocol, Direction::Unstable, "state_unstable");
    const auto f = protocol.fields(t);
    const double delta = std::hypot(f.omega12, f.omega23);
    const double phi = phase_phi(protocol, t, panels);
    const double c = std::cos(phi) / delta;
    return {c * f.omega12, cplx(0.0, -std::sin(phi)), c * f.omega23};
}

double ergotropy_unstable(const Protocol& protocol, const Spectrum& spectrum, double t, int panels) {
    require_direction(protocol, Direction::Unstable, "ergotropy_unstable");
    const auto f = protocol.fields(t);
    const double delta2 = f.omega12 * f.omega12 + f.omega23 * f.omega23;
    const double phi = phase_phi(protocol, t, panels);
    const double c2 = std::cos(phi) * std::cos(phi);
    const double s2 = std::sin(phi) * std::sin(phi);
    return c2 * (spectrum.omega1() * f.omega12 * f.omega12 + spectrum.omega3() * f.omega23 * f.omega23) / delta2 +
           spectrum.omega2() * s2 - spectrum.omega1();
}

Vec3 state_stable(const Protocol& protocol, double t) {
    require_direction(protocol, Direction::Stable, "state_stable");
    const auto f = protocol.fields(t);
    return eigensystem(f.omega12, f.omega23).dark;
}

double ergotropy_stable(const Protocol& protocol, const Spectrum& spectrum, double t) {
    require_direction(protocol, Direction::Stable, "ergotropy_stable");
    const auto f = protocol.fields(t);
    const double a2 = f.omega12 * f.omega12;
    const double b2 = f.omega23 * f.omega23;
    return (spectrum.omega3() * a2 + spectrum.omega1() * b2) / (a2 + b2) - spectrum.omega1();
}

AdiabaticPrediction predict(const Protocol& protocol, const Spectrum& spectrum, double t) {
    if (protocol.direction() == Direction::Stable)
        return {t, state_stable(protocol, t), ergotropy_stable(protocol, spectrum, t)};
    return {t, state_unstable(protocol, t), ergotropy_unstable(protocol, spectrum, t)};
}

}  // namespace qbattery
