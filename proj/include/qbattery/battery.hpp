#pragma once

#include <string_view>

#include "qbattery/linalg.hpp"

namespace qbattery {

/// Bare qutrit energies in units of the drive amplitude (hbar = 1).
class Spectrum {
public:
    /// Throws InputError unless omega1 < omega2 < omega3.
    Spectrum(double omega1, double omega2, double omega3);

    /// Three lowest transmon levels: (0, 1, 1.95).
    static Spectrum transmon() { return {0.0, 1.0, 1.95}; }

    double omega1() const { return w1_; }
    double omega2() const { return w2_; }
    double omega3() const { return w3_; }
    double gap21() const { return w2_ - w1_; }
    double gap32() const { return w3_ - w2_; }
    double gap31() const { return w3_ - w1_; }
    /// Largest storable ergotropy, omega3 - omega1.
    double max_ergotropy() const { return gap31(); }

private:
    double w1_, w2_, w3_;
};

enum class Direction { Stable, Unstable };
enum class Ramp { Linear, Smoothstep };

Direction parse_direction(std::string_view name);
Ramp parse_ramp(std::string_view name);
std::string_view to_string(Direction d);
std::string_view to_string(Ramp r);

/// Normalized ramp profile f(u), u = t / tau in [0, 1].
double ramp_profile(Ramp ramp, double u);

struct DriveFields {
    double omega12 = 0.0;
    double omega23 = 0.0;
};

/// Resonant two-tone charging protocol. Stable drives Omega12 = Omega0 f and
/// Omega23 = Omega0 (1 - f) (counterintuitive STIRAP order); Unstable swaps
/// them. After tau the fields stay at their t = tau values for `hold`.
class Protocol {
public:
    Protocol(double omega0, double tau, Ramp ramp, Direction direction, double hold = 0.0);

    double omega0() const { return omega0_; }
    double tau() const { return tau_; }
    double hold() const { return hold_; }
    double end_time() const { return tau_ + hold_; }
    Ramp ramp() const { return ramp_; }
    Direction direction() const { return direction_; }

    /// Throws InputError for t outside [0, tau + hold].
    DriveFields fields(double t) const;
    /// sqrt(Omega12^2 + Omega23^2) at time t.
    double mixing_scale(double t) const;

private:
    double omega0_;
    double tau_;
    double hold_;
    Ramp ramp_;
    Direction direction_;
};

ComplexMatrix3 h0(const Spectrum& spectrum);

/// Rotating-frame drive Hamiltonian: Omega12 on the 1-2 pair, Omega23 on 2-3.
ComplexMatrix3 h_int(double omega12, double omega23);
inline ComplexMatrix3 h_int(const DriveFields& f) { return h_int(f.omega12, f.omega23); }

struct EigenSystem {
    double delta = 0.0;    // sqrt(Omega12^2 + Omega23^2)
    Vec3 minus{};          // energy -delta
    Vec3 dark{};           // energy 0, no weight on level 2
    Vec3 plus{};           // energy +delta
};

/// Closed-form eigensystem of h_int. The dark state is
/// (Omega23 |1> - Omega12 |3>) / delta, normalized to one.
/// Throws InputError when both fields vanish.
EigenSystem eigensystem(double omega12, double omega23);

}  // namespace qbattery
