#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbattery/battery.hpp"
#include "qbattery/lindblad.hpp"

namespace qbattery {

/// Malformed or inconsistent experiment configuration. line() is 0 when the
/// problem is not tied to a single line (e.g. a cross-key conflict).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, std::size_t line = 0);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class Spacing { Linear, Log };

struct ExperimentConfig {
    std::optional<std::string> preset;
    Spectrum spectrum = Spectrum::transmon();
    NoiseRates rates{};

    Direction direction = Direction::Stable;
    Ramp ramp = Ramp::Linear;
    double omega0 = 1.0;
    double tau = 100.0;
    double hold = 0.0;

    double tau_min = 1.0;
    double tau_max = 1000.0;
    std::size_t tau_points = 40;
    Spacing spacing = Spacing::Log;

    std::size_t steps = 0;            // 0: default step rule
    std::size_t sample_stride = 100;

    std::vector<double> gap_ratios{0.5, 0.95, 2.0};
    double tmax = 5.0;                // in units of 1 / gamma21

    /// Ascending tau values of the sweep grid.
    std::vector<double> tau_grid() const;
};

/// Parses `key = value` lines ('#' starts a comment). Unknown or repeated
/// keys are errors; absent keys keep their defaults. Each override
/// ("key=value") replaces the value given in the text.
ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

}  // namespace qbattery
