#include "qbattery/discharge.hpp"

#include <cmath>

namespace qbattery {

namespace {

void require_cascade_rates(const NoiseRates& rates) {
    rates.validate();
    if (!(rates.gamma21 > 0.0) || !(rates.gamma32 > 0.0))
        throw InputError("self-discharge: gamma21 and gamma32 must be positive");
    if (rates.gamma31 != 0.0) throw InputError("self-discharge: closed form covers the sequential cascade only");
}

bool degenerate(const NoiseRates& rates) {
    return std::abs(rates.gamma21 - rates.gamma32) < kDegenerateRateThreshold * rates.gamma21;
}

}  // namespace

ChargedPopulations populations_closed_form(const NoiseRates& rates, double t, const ChargedPopulations& initial) {
    require_cascade_rates(rates);
    if (!(t >= 0.0)) throw InputError("self-discharge: time must be non-negative");
    const double g21 = rates.gamma21;
    const double g32 = rates.gamma32;
    ChargedPopulations out;
    out.p3 = std::exp(-t * g32) * initial.p3;
    if (degenerate(rates)) {
        const double g = 0.5 * (g21 + g32);
        out.p2 = (initial.p2 + g * t * initial.p3) * std::exp(-g * t);
    } else {
        out.p2 = (std::exp(-t * g32) * g32 * initial.p3 +
                  std::exp(-t * g21) * (g21 * initial.p2 - g32 * (initial.p2 + initial.p3))) /
                 (g21 - g32);
    }
    return out;
}

double ergotropy_closed_form(const Spectrum& spectrum, const NoiseRates& rates, double t) {
    require_cascade_rates(rates);
    if (!(t >= 0.0)) throw InputError("self-discharge: time must be non-negative");
    const double g21 = rates.gamma21;
    const double g32 = rates.gamma32;
    const double d21 = spectrum.gap21();
    const double d32 = spectrum.gap32();
    const double d31 = spectrum.gap31();
    if (degenerate(rates)) {
        const double g = 0.5 * (g21 + g32);
        return std::exp(-g * t) * (d31 + g * t * d21);
    }
    return (std::exp(-t * g32) * (g21 * d31 - g32 * d32) - std::exp(-t * g21) * d21 * g32) / (g21 - g32);
}

DischargeCurve discharge_curve(const Spectrum& spectrum, const NoiseRates& rates, double gamma21_t_max,
                               int n_samples) {
    require_cascade_rates(rates);
    if (n_samples < 2) throw InputError("discharge_curve: need at least 2 samples");
    if (!(gamma21_t_max > 0.0)) throw InputError("discharge_curve: time range must be positive");
    const double c0 = ergotropy_closed_form(spectrum, rates, 0.0);
    DischargeCurve curve;
    curve.samples.reserve(static_cast<std::size_t>(n_samples));
    for (int k = 0; k < n_samples; ++k) {
        const double x = gamma21_t_max * k / (n_samples - 1);
        const double t = x / rates.gamma21;
        const auto p = populations_closed_form(rates, t, {});
        const double c = ergotropy_closed_form(spectrum, rates, t);
        curve.samples.push_back({x, t, p.p2, p.p3, c, c / c0});
    }
    return curve;
}

}  // namespace qbattery
