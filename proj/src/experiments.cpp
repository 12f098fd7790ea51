#include "qbattery/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "qbattery/observables.hpp"

namespace qbattery {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

namespace {

EvolveOptions charge_options(const ExperimentConfig& cfg, double duration) {
    EvolveOptions opt;
    opt.duration = duration;
    opt.steps = cfg.steps ? cfg.steps : default_steps(duration, cfg.omega0);
    opt.sample_every = cfg.sample_stride;
    return opt;
}

void write_row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << format_number(v);
        first = false;
    }
    os << '\n';
}

SweepRow sweep_point(const ExperimentConfig& cfg, double tau) {
    SweepRow row;
    row.tau = tau;
    try {
        const Protocol protocol(cfg.omega0, tau, cfg.ramp, cfg.direction);
        const auto trace =
            evolve(DensityMatrix::pure(1), protocol, cfg.rates, cfg.spectrum, charge_options(cfg, tau));
        const auto report = charge_report(trace.final().rho, cfg.spectrum, tau);
        row.ergotropy = report.ergotropy;
        row.ergotropy_ratio = report.ergotropy / cfg.spectrum.max_ergotropy();
        row.power = report.power;
        row.power_ratio = report.power_ratio;
        for (const auto& s : trace.samples) {
            row.max_p2 = std::max(row.max_p2, s.populations[1]);
            row.trace_error_max = std::max(row.trace_error_max, s.trace_error);
        }
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row = {tau, nan, nan, nan, nan, nan, nan, std::string(e.what())};
    }
    return row;
}

}  // namespace

EvolutionTrace run_charge(const ExperimentConfig& cfg, std::ostream* csv) {
    const Protocol protocol(cfg.omega0, cfg.tau, cfg.ramp, cfg.direction, cfg.hold);
    auto trace = evolve(DensityMatrix::pure(1), protocol, cfg.rates, cfg.spectrum,
                        charge_options(cfg, protocol.end_time()));
    if (csv) {
        *csv << "t,P1,P2,P3,ergotropy,trace_error\n";
        for (const auto& s : trace.samples)
            write_row(*csv, {s.t, s.populations[0], s.populations[1], s.populations[2], s.ergotropy, s.trace_error});
    }
    return trace;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, std::ostream* csv, unsigned workers) {
    const auto grid = cfg.tau_grid();
    std::vector<SweepRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = sweep_point(cfg, grid[i]);
    };
    const unsigned n = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1)));
    if (n == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
    }

    if (csv) {
        *csv << "tau,ergotropy,ergotropy_ratio,power,power_ratio,max_P2,trace_error_max\n";
        for (const auto& r : rows)
            write_row(*csv, {r.tau, r.ergotropy, r.ergotropy_ratio, r.power, r.power_ratio, r.max_p2,
                             r.trace_error_max});
    }
    return rows;
}

std::vector<GapRatioCurve> run_self_discharge(const ExperimentConfig& cfg, std::ostream* csv, int n_samples) {
    std::vector<GapRatioCurve> curves;
    const double w1 = cfg.spectrum.omega1();
    const double d21 = cfg.spectrum.gap21();
    for (double g : cfg.gap_ratios) {
        const Spectrum spectrum(w1, w1 + d21, w1 + d21 + g * d21);
        curves.push_back({g, discharge_curve(spectrum, cfg.rates, cfg.tmax, n_samples)});
    }
    if (csv) {
        *csv << "gamma21_t,gap_ratio,P2,P3,ergotropy,ergotropy_normalized\n";
        for (const auto& c : curves)
            for (const auto& s : c.curve.samples)
                write_row(*csv, {s.gamma21_t, c.gap_ratio, s.p2, s.p3, s.ergotropy, s.normalized_ergotropy});
    }
    return curves;
}

}  // namespace qbattery
