#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qbattery/config.hpp"
#include "qbattery/discharge.hpp"
#include "qbattery/lindblad.hpp"

namespace qbattery {

/// Scientific notation with 12 significant digits.
std::string format_number(double v);

struct SweepRow {
    double tau = 0.0;
    double ergotropy = 0.0;
    double ergotropy_ratio = 0.0;   // C / C_max
    double power = 0.0;
    double power_ratio = 0.0;       // P / P_max
    double max_p2 = 0.0;
    double trace_error_max = 0.0;
    std::optional<std::string> error;
};

struct GapRatioCurve {
    double gap_ratio = 0.0;
    DischargeCurve curve;
};

/// Charging run from the ground state over [0, tau + hold]; writes
/// `t,P1,P2,P3,ergotropy,trace_error` rows when csv is non-null.
EvolutionTrace run_charge(const ExperimentConfig& config, std::ostream* csv = nullptr);

/// One charging run per tau of the grid (no hold), spread over `workers`
/// threads. Rows come back in ascending tau. A failing point becomes a row
/// with `error` set and NaN columns; the sweep continues.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, std::ostream* csv = nullptr, unsigned workers = 1);

/// Closed-form discharge curves over gamma21 t in [0, tmax]. For each gap
/// ratio g the spectrum keeps omega1 and the 1-2 gap of the config and sets
/// the 2-3 gap to g times the 1-2 gap.
std::vector<GapRatioCurve> run_self_discharge(const ExperimentConfig& config, std::ostream* csv = nullptr,
                                              int n_samples = 101);

}  // namespace qbattery
