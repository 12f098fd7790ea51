#include "qbattery/battery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbattery {

Spectrum::Spectrum(double omega1, double omega2, double omega3) : w1_(omega1), w2_(omega2), w3_(omega3) {
    if (!(std::isfinite(omega1) && std::isfinite(omega2) && std::isfinite(omega3)))
        throw InputError("spectrum: energies must be finite");
    if (!(omega1 < omega2 && omega2 < omega3))
        throw InputError("spectrum: energies must satisfy omega1 < omega2 < omega3");
}

Direction parse_direction(std::string_view name) {
    if (name == "stable") return Direction::Stable;
    if (name == "unstable") return Direction::Unstable;
    throw InputError("unknown direction '" + std::string(name) + "' (expected stable|unstable)");
}

Ramp parse_ramp(std::string_view name) {
    if (name == "linear") return Ramp::Linear;
    if (name == "smoothstep") return Ramp::Smoothstep;
    throw InputError("unknown ramp '" + std::string(name) + "' (expected linear|smoothstep)");
}

std::string_view to_string(Direction d) { return d == Direction::Stable ? "stable" : "unstable"; }

std::string_view to_string(Ramp r) { return r == Ramp::Linear ? "linear" : "smoothstep"; }

double ramp_profile(Ramp ramp, double u) {
    switch (ramp) {
        case Ramp::Linear:
            return u;
        case Ramp::Smoothstep:
            return u * u * (3.0 - 2.0 * u);
    }
    return u;
}

Protocol::Protocol(double omega0, double tau, Ramp ramp, Direction direction, double hold)
    : omega0_(omega0), tau_(tau), hold_(hold), ramp_(ramp), direction_(direction) {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InputError("protocol: omega0 must be positive");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InputError("protocol: tau must be positive");
    if (!(hold >= 0.0) || !std::isfinite(hold)) throw InputError("protocol: hold must be non-negative");
    constexpr double kBoundaryTol = 1e-12;
    if (std::abs(ramp_profile(ramp, 0.0)) > kBoundaryTol || std::abs(ramp_profile(ramp, 1.0) - 1.0) > kBoundaryTol)
        throw InputError("protocol: ramp must satisfy f(0) = 0 and f(tau) = 1");
}

DriveFields Protocol::fields(double t) const {
    if (!(t >= 0.0 && t <= end_time()))
        throw InputError("protocol: time " + std::to_string(t) + " outside [0, " + std::to_string(end_time()) + "]");
    const double f = ramp_profile(ramp_, std::min(t, tau_) / tau_);
    const double rising = omega0_ * f;
    const double falling = omega0_ * (1.0 - f);
    if (direction_ == Direction::Stable) return {rising, falling};
    return {falling, rising};
}

double Protocol::mixing_scale(double t) const {
    const auto f = fields(t);
    return std::hypot(f.omega12, f.omega23);
}

ComplexMatrix3 h0(const Spectrum& spectrum) {
    return ComplexMatrix3::diagonal(spectrum.omega1(), spectrum.omega2(), spectrum.omega3());
}

ComplexMatrix3 h_int(double omega12, double omega23) {
    ComplexMatrix3 h;
    h(0, 1) = omega12;
    h(1, 0) = omega12;
    h(1, 2) = omega23;
    h(2, 1) = omega23;
    return h;
}

EigenSystem eigensystem(double omega12, double omega23) {
    const double delta = std::hypot(omega12, omega23);
    if (!(delta > 0.0)) throw InputError("eigensystem: undefined for Omega12 = Omega23 = 0");
    const double a = omega12 / delta;
    const double b = omega23 / delta;
    const double r = 1.0 / std::sqrt(2.0);
    EigenSystem es;
    es.delta = delta;
    es.plus = {a * r, r, b * r};
    es.minus = {a * r, -r, b * r};
    es.dark = {b, 0.0, -a};
    return es;
}

}  // namespace qbattery
