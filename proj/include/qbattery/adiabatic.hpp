#pragma once

#include "qbattery/battery.hpp"

namespace qbattery {

/// Adiabatic-limit prediction of the charging trajectory at time t.
struct AdiabaticPrediction {
    double t = 0.0;
    Vec3 state{};
    double ergotropy = 0.0;
};

inline constexpr int kDefaultPhasePanels = 4096;

/// Accumulated dynamical phase: integral of the mixing scale over [0, t].
/// Composite Simpson on the ramp segment (panel count rounded up to even),
/// exact on the hold segment where the integrand is constant.
double phase_phi(const Protocol& protocol, double t, int panels = kDefaultPhasePanels);

/// Unstable path, starting in |1> and split evenly between |E+> and |E->:
/// cos(Phi)/Delta (Omega12 |1> + Omega23 |3>) - i sin(Phi) |2>.
Vec3 state_unstable(const Protocol& protocol, double t, int panels = kDefaultPhasePanels);
double ergotropy_unstable(const Protocol& protocol, const Spectrum& spectrum, double t,
                          int panels = kDefaultPhasePanels);

/// Stable path: the instantaneous dark state, carrying no phase.
Vec3 state_stable(const Protocol& protocol, double t);
double ergotropy_stable(const Protocol& protocol, const Spectrum& spectrum, double t);

/// Dispatches on the protocol direction.
AdiabaticPrediction predict(const Protocol& protocol, const Spectrum& spectrum, double t);

}  // namespace qbattery
