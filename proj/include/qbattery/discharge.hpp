#pragma once

#include <vector>

#include "qbattery/battery.hpp"
#include "qbattery/lindblad.hpp"

namespace qbattery {

/// Populations of levels 2 and 3 when the charger is disconnected.
struct ChargedPopulations {
    double p2 = 0.0;
    double p3 = 1.0;
};

struct DischargeSample {
    double gamma21_t = 0.0;   // dimensionless time
    double t = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double ergotropy = 0.0;
    double normalized_ergotropy = 0.0;   // C(t) / C(0)
};

struct DischargeCurve {
    std::vector<DischargeSample> samples;
};

/// Relative rate separation |gamma21 - gamma32| below which the equal-rate
/// limit is used in place of the 0/0 general expression.
inline constexpr double kDegenerateRateThreshold = 1e-6;

/// Closed-form solution of the sequential decay cascade 3 -> 2 -> 1 from a
/// diagonal initial state. Requires gamma21, gamma32 > 0 and gamma31 == 0.
ChargedPopulations populations_closed_form(const NoiseRates& rates, double t, const ChargedPopulations& initial);

/// Ergotropy of an initially fully charged battery (all population in |3>)
/// under the same cascade.
double ergotropy_closed_form(const Spectrum& spectrum, const NoiseRates& rates, double t);

/// n_samples uniform points with gamma21 t in [0, gamma21_t_max].
DischargeCurve discharge_curve(const Spectrum& spectrum, const NoiseRates& rates, double gamma21_t_max,
                               int n_samples);

}  // namespace qbattery
