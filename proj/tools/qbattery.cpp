// Command-line front end: charging runs, tau sweeps and self-discharge curves.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qbattery/config.hpp"
#include "qbattery/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
    std::string config_path;
    std::string out_path;
    unsigned workers = 1;
    std::vector<std::string> overrides;
};

qbattery::ExperimentConfig load(const Options& opt) {
    std::string text;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw qbattery::ConfigError("cannot read config file '" + opt.config_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return qbattery::parse_config(text, opt.overrides);
}

template <class Fn>
int with_output(const Options& opt, Fn&& fn) {
    if (opt.out_path.empty()) return fn(std::cout);
    std::ofstream out(opt.out_path);
    if (!out) {
        std::cerr << "error: cannot open '" << opt.out_path << "' for writing\n";
        return 1;
    }
    return fn(out);
}

void describe(const qbattery::ExperimentConfig& c, std::ostream& os) {
    using qbattery::format_number;
    os << "preset = " << c.preset.value_or("none") << '\n'
       << "omega = " << format_number(c.spectrum.omega1()) << ", " << format_number(c.spectrum.omega2()) << ", "
       << format_number(c.spectrum.omega3()) << '\n'
       << "gamma21 = " << format_number(c.rates.gamma21) << "\ngamma32 = " << format_number(c.rates.gamma32)
       << "\ngamma31 = " << format_number(c.rates.gamma31) << "\ndeph2 = " << format_number(c.rates.deph2)
       << "\ndeph3 = " << format_number(c.rates.deph3) << '\n'
       << "direction = " << qbattery::to_string(c.direction) << "\nramp = " << qbattery::to_string(c.ramp) << '\n'
       << "omega0 = " << format_number(c.omega0) << "\ntau = " << format_number(c.tau)
       << "\nhold = " << format_number(c.hold) << '\n'
       << "tau grid = " << c.tau_points << " points in [" << format_number(c.tau_min) << ", "
       << format_number(c.tau_max) << "], " << (c.spacing == qbattery::Spacing::Log ? "log" : "linear") << '\n'
       << "steps = " << (c.steps ? std::to_string(c.steps) : std::string("auto"))
       << "\nsample_stride = " << c.sample_stride << "\ntmax = " << format_number(c.tmax) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-level adiabatic quantum battery simulator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "experiment config file (key = value lines)");
        sub->add_option("--override", opt.overrides, "override a config entry, key=value (repeatable)");
    };

    auto* charge = app.add_subcommand("charge", "single charging trajectory, per-timestep CSV");
    auto* sweep = app.add_subcommand("sweep", "final ergotropy and power over a tau grid");
    auto* discharge = app.add_subcommand("self-discharge", "closed-form self-discharge curves per gap ratio");
    auto* check = app.add_subcommand("validate-config", "parse a config and print the resolved values");
    for (auto* sub : {charge, sweep, discharge, check}) add_common(sub);
    for (auto* sub : {charge, sweep, discharge}) sub->add_option("--out", opt.out_path, "output CSV path (default stdout)");
    sweep->add_option("--workers", opt.workers, "concurrent sweep points")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = load(opt);
        if (*check) {
            describe(cfg, std::cout);
            return 0;
        }
        if (*charge) {
            return with_output(opt, [&](std::ostream& os) {
                qbattery::run_charge(cfg, &os);
                return 0;
            });
        }
        if (*sweep) {
            return with_output(opt, [&](std::ostream& os) {
                const auto rows = qbattery::run_sweep(cfg, &os, opt.workers);
                int rc = 0;
                for (const auto& r : rows) {
                    if (r.error) {
                        std::cerr << "tau=" << qbattery::format_number(r.tau) << ": " << *r.error << '\n';
                        rc = kExitNumeric;
                    }
                }
                return rc;
            });
        }
        return with_output(opt, [&](std::ostream& os) {
            qbattery::run_self_discharge(cfg, &os);
            return 0;
        });
    } catch (const qbattery::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const qbattery::InputError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const qbattery::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    }
}
