// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbattery/adiabatic.hpp"
#include "qbattery/discharge.hpp"
#include "qbattery/experiments.hpp"
#include "qbattery/lindblad.hpp"
#include "qbattery/observables.hpp"

using namespace qbattery;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s | %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const Spectrum kTransmon = Spectrum::transmon();
constexpr double kTau = 100.0;
constexpr std::size_t kStride = 100;

EvolutionTrace charge_with_hold(Direction dir, double gamma21) {
    const Protocol p(1.0, kTau, Ramp::Linear, dir, 2.0 * kTau);
    EvolveOptions opt;
    opt.duration = p.end_time();
    opt.steps = default_steps(opt.duration, p.omega0());
    opt.sample_every = kStride;
    return evolve(DensityMatrix::pure(1), p, NoiseRates::transmon(gamma21), kTransmon, opt);
}

const EvolutionSample& sample_at(const EvolutionTrace& trace, double t) {
    return *std::min_element(trace.samples.begin(), trace.samples.end(), [t](const auto& a, const auto& b) {
        return std::abs(a.t - t) < std::abs(b.t - t);
    });
}

struct Integrity {
    double trace_error = 0.0;
    double hermiticity = 0.0;
    double min_eigenvalue = std::numeric_limits<double>::infinity();
};

Integrity integrity(const EvolutionTrace& trace) {
    Integrity r;
    for (const auto& s : trace.samples) {
        const auto v = validate(s.rho);
        r.trace_error = std::max(r.trace_error, v.trace_error);
        r.hermiticity = std::max(r.hermiticity, v.hermiticity_error);
        r.min_eigenvalue = std::min(r.min_eigenvalue, v.min_eigenvalue);
    }
    return r;
}

ExperimentConfig sweep_config(double gamma21) {
    auto cfg = parse_config("preset = transmon\ntau_min = 1\ntau_max = 1000\ntau_points = 40\nspacing = log\n"
                            "sample_stride = 100",
                            {"gamma21=" + format_number(gamma21)});
    return cfg;
}

}  // namespace

int main() {
    const auto stable = charge_with_hold(Direction::Stable, 0.0);
    const auto unstable = charge_with_hold(Direction::Unstable, 0.0);

    report(1, "stable charging, noiseless, hold 2tau", [&] {
        const double cmax = kTransmon.max_ergotropy();
        const double ratio = sample_at(stable, kTau).ergotropy / cmax;
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& s : stable.samples) {
            if (s.t < kTau) continue;
            lo = std::min(lo, s.ergotropy);
            hi = std::max(hi, s.ergotropy);
        }
        const double variation = (hi - lo) / cmax;
        return Outcome{ratio >= 0.99 && variation < 1e-4,
                       fmt("C(tau)/Cmax=%.6f (>=0.99), hold variation=%.3e Cmax (<1e-4)", ratio, variation)};
    });

    report(2, "unstable charging oscillation in hold", [&] {
        const double cmax = kTransmon.max_ergotropy();
        const Protocol p(1.0, kTau, Ramp::Linear, Direction::Unstable, 2.0 * kTau);
        const double expected_freq = 2.0 * p.mixing_scale(kTau);
        std::vector<std::pair<double, double>> hold;
        for (const auto& s : unstable.samples)
            if (s.t >= kTau) hold.emplace_back(s.t, s.ergotropy);
        double mean = 0.0, lo = INFINITY, hi = -INFINITY;
        for (const auto& [t, c] : hold) {
            mean += c;
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        mean /= static_cast<double>(hold.size());
        std::vector<double> crossings;
        for (std::size_t i = 1; i < hold.size(); ++i) {
            const double a = hold[i - 1].second - mean;
            const double b = hold[i].second - mean;
            if ((a < 0.0) != (b < 0.0))
                crossings.push_back(hold[i - 1].first + (hold[i].first - hold[i - 1].first) * a / (a - b));
        }
        double freq = 0.0;
        if (crossings.size() >= 2)
            freq = std::numbers::pi * static_cast<double>(crossings.size() - 1) / (crossings.back() - crossings.front());
        const double freq_err = std::abs(freq / expected_freq - 1.0);
        const double depth = (hi - lo) / cmax;
        const double predicted_depth = kTransmon.gap32() / cmax;
        return Outcome{freq_err < 0.02 && depth >= 0.5,
                       fmt("freq=%.5f vs 2Delta=%.5f (rel err %.2e, <2%%); peak-to-trough=%.4f Cmax (>=0.5; "
                           "adiabatic limit gap32/gap31=%.4f)",
                           freq, expected_freq, freq_err, depth, predicted_depth)};
    });

    report(3, "dark-state identity, 1000 random fields", [&] {
        std::mt19937_64 rng(20200101);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        double worst_null = 0.0, worst_eig = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double a = u(rng), b = u(rng);
            const auto es = eigensystem(a, b);
            worst_null = std::max(worst_null, norm(h_int(a, b) * es.dark));
            const auto jac = eig3_hermitian(h_int(a, b));
            worst_eig = std::max({worst_eig, std::abs(jac.values[0] + es.delta), std::abs(jac.values[1]),
                                  std::abs(jac.values[2] - es.delta)});
        }
        return Outcome{worst_null < 1e-12 && worst_eig < 1e-10,
                       fmt("max |H E0|=%.2e (<1e-12), max eigenvalue error=%.2e (<1e-10)", worst_null, worst_eig)};
    });

    report(4, "Lindblad integrity on criteria 1-2 and a noisy run", [&] {
        const auto noisy = charge_with_hold(Direction::Stable, 1e-2);
        Integrity all;
        for (const auto* t : {&stable, &unstable, &noisy}) {
            const auto i = integrity(*t);
            all.trace_error = std::max(all.trace_error, i.trace_error);
            all.hermiticity = std::max(all.hermiticity, i.hermiticity);
            all.min_eigenvalue = std::min(all.min_eigenvalue, i.min_eigenvalue);
        }
        return Outcome{all.trace_error < 1e-9 && all.hermiticity < 1e-12 && all.min_eigenvalue >= -1e-8,
                       fmt("trace error=%.2e, hermiticity=%.2e, min eigenvalue=%.2e", all.trace_error,
                           all.hermiticity, all.min_eigenvalue)};
    });

    report(5, "RK4 vs matrix-exponential staircase; 4th-order convergence", [&] {
        const Protocol p(1.0, 50.0, Ramp::Linear, Direction::Stable);
        double worst = 0.0;
        for (double g21 : {0.0, 1e-2}) {
            const auto rates = NoiseRates::transmon(g21);
            EvolveOptions opt;
            opt.duration = p.tau();
            opt.sample_every = 1000;
            const double rk = evolve(DensityMatrix::pure(1), p, rates, kTransmon, opt).final().ergotropy;
            const double ex =
                ergotropy(propagate_piecewise_constant(DensityMatrix::pure(1), staircase(p, 1000), rates), kTransmon);
            worst = std::max(worst, std::abs(rk - ex));
        }
        const DriveFields fields{0.8, 0.6};
        const auto rates = NoiseRates::transmon(0.05);
        const auto exact = propagate_piecewise_constant(DensityMatrix::pure(1), {{0.8, 0.6, 10.0}}, rates).matrix();
        std::vector<double> errors;
        for (std::size_t steps : {25, 50, 100, 200, 400}) {
            EvolveOptions opt;
            opt.duration = 10.0;
            opt.steps = steps;
            opt.sample_every = steps;
            errors.push_back(
                (evolve_frozen(DensityMatrix::pure(1), fields, rates, kTransmon, opt).final().rho.matrix() - exact)
                    .max_abs());
        }
        bool order_ok = true;
        std::string ratios;
        for (std::size_t k = 1; k < errors.size(); ++k) {
            const double r = errors[k - 1] / errors[k];
            order_ok = order_ok && std::abs(r - 16.0) <= 4.0;
            ratios += fmt("%s%.2f", k > 1 ? "," : "", r);
        }
        return Outcome{worst < 1e-4 && order_ok,
                       fmt("max |dC|=%.2e (<1e-4); error ratios per halving=[%s] (16+-4)", worst, ratios.c_str())};
    });

    std::vector<SweepRow> clean_rows;
    report(6, "power normalization, noiseless sweep", [&] {
        const auto start = std::chrono::steady_clock::now();
        clean_rows = run_sweep(sweep_config(0.0));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        double best = 0.0, best_tau = 0.0;
        for (const auto& r : clean_rows)
            if (r.power_ratio > best) best = r.power_ratio, best_tau = r.tau;
        const auto charged = std::find_if(clean_rows.begin(), clean_rows.end(),
                                          [](const SweepRow& r) { return r.ergotropy_ratio >= 0.99; });
        if (charged == clean_rows.end()) return Outcome{false, "no tau reaches C/Cmax >= 0.99"};
        const bool ok = std::abs(best - 0.5) <= 0.15 && std::abs(charged->power_ratio - 0.25) <= 0.1 && secs < 300.0;
        return Outcome{ok, fmt("max P/Pmax=%.4f at tau=%.3f (0.5+-0.15); first fully charged tau=%.3f with "
                               "P/Pmax=%.4f (0.25+-0.1); sweep %.1fs (<300s)",
                               best, best_tau, charged->tau, charged->power_ratio, secs)};
    });

    std::vector<SweepRow> noisy_rows;
    double noisy_peak_tau = 0.0;
    double noisy_peak_ratio = 0.0;
    report(7, "noise trade-off, gamma21 = 1e-2", [&] {
        noisy_rows = run_sweep(sweep_config(1e-2));
        const auto near10 = std::min_element(noisy_rows.begin(), noisy_rows.end(), [](const auto& a, const auto& b) {
            return std::abs(std::log(a.tau / 10.0)) < std::abs(std::log(b.tau / 10.0));
        });
        const auto peak = std::max_element(noisy_rows.begin(), noisy_rows.end(), [](const auto& a, const auto& b) {
            return a.ergotropy_ratio < b.ergotropy_ratio;
        });
        noisy_peak_tau = peak->tau;
        noisy_peak_ratio = peak->ergotropy_ratio;
        const double first = noisy_rows.front().ergotropy_ratio;
        const double last = noisy_rows.back().ergotropy_ratio;
        const bool interior = peak != noisy_rows.begin() && peak != std::prev(noisy_rows.end());
        return Outcome{interior && near10->ergotropy_ratio > first && near10->ergotropy_ratio > last,
                       fmt("C/Cmax: tau=1 -> %.4f, tau=%.3f -> %.4f, tau=1000 -> %.4f; peak %.4f at tau=%.3f",
                           first, near10->tau, near10->ergotropy_ratio, last, peak->ergotropy_ratio, peak->tau)};
    });

    report(8, "self-discharge closed form vs free-decay integration", [&] {
        NoiseRates rates;
        rates.gamma21 = 1.0;
        rates.gamma32 = 2.0;
        EvolveOptions opt;
        opt.duration = 1.0;
        opt.steps = 20000;
        opt.sample_every = 200;
        const auto trace = evolve(DensityMatrix::pure(3), std::nullopt, rates, kTransmon, opt);
        double worst = 0.0;
        for (const auto& s : trace.samples) {
            const auto p = populations_closed_form(rates, s.t, {});
            worst = std::max({worst, std::abs(p.p2 - s.populations[1]), std::abs(p.p3 - s.populations[2]),
                              std::abs(ergotropy_closed_form(kTransmon, rates, s.t) - s.ergotropy)});
        }
        const auto& end = trace.final();
        const double p3_ref = std::exp(-2.0);
        const double p2_ref = 2.0 * (std::exp(-1.0) - std::exp(-2.0));
        const double c_ref = 0.728992118181054;
        const double value_err = std::max({std::abs(end.populations[2] - p3_ref), std::abs(end.populations[1] - p2_ref),
                                           std::abs(end.ergotropy - c_ref)});
        NoiseRates degenerate = rates;
        degenerate.gamma32 = 1.0;
        NoiseRates near = rates;
        near.gamma32 = 1.0 + 1e-8;
        double continuity = 0.0;
        for (double t = 0.0; t <= 10.0; t += 0.05)
            continuity = std::max(continuity, std::abs(ergotropy_closed_form(kTransmon, degenerate, t) -
                                                       ergotropy_closed_form(kTransmon, near, t)));
        return Outcome{worst < 1e-6 && value_err < 1e-6 && continuity < 1e-6,
                       fmt("max |closed - numeric|=%.2e; final P2=%.6f P3=%.6f C=%.5f (err %.2e); degenerate "
                           "continuity=%.2e",
                           worst, end.populations[1], end.populations[2], end.ergotropy, value_err, continuity)};
    });

    report(9, "spectrum engineering: gap-ratio ordering", [&] {
        auto cfg = parse_config("gamma21 = 1\ngamma32 = 2\ngap_ratios = 0.5, 0.95, 2.0\ntmax = 2");
        const auto curves = run_self_discharge(cfg, nullptr, 201);
        std::vector<double> at1;
        for (const auto& c : curves) at1.push_back(c.curve.samples[100].normalized_ergotropy);
        return Outcome{at1[0] > at1[1] && at1[1] > at1[2],
                       fmt("normalized C at gamma21 t=1: 0.5 -> %.5f, 0.95 -> %.5f, 2.0 -> %.5f", at1[0], at1[1],
                           at1[2])};
    });

    report(10, "gamma31 negligibility at the noisy peak", [&] {
        if (noisy_peak_tau <= 0.0) return Outcome{false, "criterion 7 produced no peak"};
        auto cfg = sweep_config(1e-2);
        cfg.rates.gamma31 = 1e-2 * cfg.rates.gamma21;
        cfg.tau_min = cfg.tau_max = noisy_peak_tau;
        cfg.tau_points = 1;
        const auto rows = run_sweep(cfg);
        const double rel = std::abs(rows.front().ergotropy_ratio - noisy_peak_ratio) / noisy_peak_ratio;
        return Outcome{rel < 0.01, fmt("peak C/Cmax %.6f -> %.6f with gamma31 on (rel change %.2e, <1%%)",
                                       noisy_peak_ratio, rows.front().ergotropy_ratio, rel)};
    });

    report(11, "determinism: byte-identical CSV on re-run", [&] {
        auto csv = [](auto&& fn) {
            std::ostringstream os;
            fn(os);
            return os.str();
        };
        const auto charge_cfg = parse_config("preset = transmon\ngamma21 = 0.002\ntau = 30\nhold = 10\nsample_stride = 50");
        const auto sweep_cfg = parse_config("preset = transmon\ngamma21 = 0.01\ntau_min = 1\ntau_max = 40\ntau_points = 8");
        const auto sd_cfg = parse_config("preset = transmon\ngamma21 = 0.5");
        const bool charge_same = csv([&](auto& os) { run_charge(charge_cfg, &os); }) ==
                                 csv([&](auto& os) { run_charge(charge_cfg, &os); });
        const bool sweep_same = csv([&](auto& os) { run_sweep(sweep_cfg, &os, 1); }) ==
                                csv([&](auto& os) { run_sweep(sweep_cfg, &os, 4); });
        const bool sd_same = csv([&](auto& os) { run_self_discharge(sd_cfg, &os); }) ==
                             csv([&](auto& os) { run_self_discharge(sd_cfg, &os); });
        return Outcome{charge_same && sweep_same && sd_same,
                       fmt("charge %s, sweep (1 vs 4 workers) %s, self-discharge %s", charge_same ? "same" : "DIFFERS",
                           sweep_same ? "same" : "DIFFERS", sd_same ? "same" : "DIFFERS")};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
