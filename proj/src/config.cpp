#include "qbattery/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace qbattery {

ConfigError::ConfigError(const std::string& message, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

std::vector<double> ExperimentConfig::tau_grid() const {
    std::vector<double> grid;
    grid.reserve(tau_points);
    if (tau_points == 1) {
        grid.push_back(tau_min);
        return grid;
    }
    const double n = static_cast<double>(tau_points - 1);
    for (std::size_t k = 0; k < tau_points; ++k) {
        const double u = static_cast<double>(k) / n;
        if (spacing == Spacing::Log)
            grid.push_back(tau_min * std::pow(tau_max / tau_min, u));
        else
            grid.push_back(tau_min + (tau_max - tau_min) * u);
    }
    grid.back() = tau_max;
    return grid;
}

namespace {

const std::set<std::string, std::less<>> kKnownKeys{
    "preset", "omega1",   "omega2",   "omega3", "gamma21",       "gamma32",    "gamma31", "deph2",
    "deph3",  "direction", "ramp",    "omega0", "tau",           "tau_min",    "tau_max", "tau_points",
    "spacing", "hold",    "steps",    "sample_stride", "gap_ratios", "tmax"};

struct Entry {
    std::string value;
    std::size_t line;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::pair<std::string, std::string> split_assignment(std::string_view line, std::size_t lineno) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", lineno);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", lineno);
    if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", lineno);
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown key '" + std::string(key) + "'", lineno);
    return {std::string(key), std::string(value)};
}

double to_double(const std::string& key, const Entry& e) {
    double v = 0.0;
    const auto* begin = e.value.data();
    const auto* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ConfigError("'" + key + "' expects a number, got '" + e.value + "'", e.line);
    return v;
}

std::size_t to_count(const std::string& key, const Entry& e) {
    std::size_t v = 0;
    const auto* begin = e.value.data();
    const auto* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("'" + key + "' expects a non-negative integer, got '" + e.value + "'", e.line);
    return v;
}

class Entries {
public:
    explicit Entries(std::map<std::string, Entry> map) : map_(std::move(map)) {}

    const Entry* find(const std::string& key) const {
        const auto it = map_.find(key);
        return it == map_.end() ? nullptr : &it->second;
    }
    std::optional<double> number(const std::string& key) const {
        const auto* e = find(key);
        return e ? std::optional(to_double(key, *e)) : std::nullopt;
    }
    std::optional<std::size_t> count(const std::string& key) const {
        const auto* e = find(key);
        return e ? std::optional(to_count(key, *e)) : std::nullopt;
    }
    std::size_t line(const std::string& key) const {
        const auto* e = find(key);
        return e ? e->line : 0;
    }

private:
    std::map<std::string, Entry> map_;
};

std::vector<double> parse_list(const std::string& key, const Entry& e) {
    std::vector<double> out;
    std::string_view rest = e.value;
    while (true) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        out.push_back(to_double(key, {std::string(item), e.line}));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

void require(bool ok, const std::string& message, std::size_t line) {
    if (!ok) throw ConfigError(message, line);
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
    std::map<std::string, Entry> raw;
    std::size_t lineno = 0;
    while (!text.empty()) {
        ++lineno;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto [key, value] = split_assignment(line, lineno);
        if (raw.contains(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
        raw[key] = {value, lineno};
    }
    for (const auto& ov : overrides) {
        try {
            auto [key, value] = split_assignment(ov, 0);
            raw[key] = {value, 0};
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("override '") + ov + "': " + e.what());
        }
    }

    const Entries entries(std::move(raw));
    ExperimentConfig cfg;

    const auto omega1 = entries.number("omega1");
    const auto omega2 = entries.number("omega2");
    const auto omega3 = entries.number("omega3");
    const auto gamma21 = entries.number("gamma21");
    const auto gamma32 = entries.number("gamma32");
    const auto gamma31 = entries.number("gamma31");
    const auto deph2 = entries.number("deph2");
    const auto deph3 = entries.number("deph3");

    for (const char* key : {"gamma21", "gamma32", "gamma31", "deph2", "deph3"})
        if (const auto v = entries.number(key); v && *v < 0.0)
            throw ConfigError(std::string("'") + key + "' must be non-negative", entries.line(key));

    if (const auto* p = entries.find("preset")) {
        if (p->value != "transmon") throw ConfigError("unknown preset '" + p->value + "'", p->line);
        cfg.preset = p->value;
        const auto base = Spectrum::transmon();
        const auto rates = NoiseRates::transmon(gamma21.value_or(0.0));
        auto check = [&](const char* key, const std::optional<double>& given, double preset_value) {
            if (given && *given != preset_value)
                throw ConfigError(std::string("'") + key + "' conflicts with preset transmon", entries.line(key));
        };
        check("omega1", omega1, base.omega1());
        check("omega2", omega2, base.omega2());
        check("omega3", omega3, base.omega3());
        check("gamma32", gamma32, rates.gamma32);
        check("deph2", deph2, rates.deph2);
        check("deph3", deph3, rates.deph3);
        cfg.spectrum = base;
        cfg.rates = rates;
        cfg.rates.gamma31 = gamma31.value_or(0.0);
    } else {
        const auto base = Spectrum::transmon();
        try {
            cfg.spectrum = Spectrum(omega1.value_or(base.omega1()), omega2.value_or(base.omega2()),
                                    omega3.value_or(base.omega3()));
        } catch (const InputError& e) {
            throw ConfigError(e.what());
        }
        cfg.rates.gamma21 = gamma21.value_or(0.0);
        cfg.rates.gamma32 = gamma32.value_or(0.0);
        cfg.rates.gamma31 = gamma31.value_or(0.0);
        cfg.rates.deph2 = deph2.value_or(0.0);
        cfg.rates.deph3 = deph3.value_or(0.0);
    }

    try {
        if (const auto* e = entries.find("direction")) cfg.direction = parse_direction(e->value);
        if (const auto* e = entries.find("ramp")) cfg.ramp = parse_ramp(e->value);
    } catch (const InputError& err) {
        throw ConfigError(err.what(), entries.line(entries.find("direction") ? "direction" : "ramp"));
    }
    if (const auto* e = entries.find("spacing")) {
        if (e->value == "log")
            cfg.spacing = Spacing::Log;
        else if (e->value == "linear")
            cfg.spacing = Spacing::Linear;
        else
            throw ConfigError("spacing must be 'linear' or 'log'", e->line);
    }

    cfg.omega0 = entries.number("omega0").value_or(cfg.omega0);
    cfg.tau = entries.number("tau").value_or(cfg.tau);
    cfg.hold = entries.number("hold").value_or(cfg.hold);
    cfg.tau_min = entries.number("tau_min").value_or(cfg.tau_min);
    cfg.tau_max = entries.number("tau_max").value_or(cfg.tau_max);
    cfg.tau_points = entries.count("tau_points").value_or(cfg.tau_points);
    cfg.steps = entries.count("steps").value_or(cfg.steps);
    cfg.sample_stride = entries.count("sample_stride").value_or(cfg.sample_stride);
    cfg.tmax = entries.number("tmax").value_or(cfg.tmax);
    if (const auto* e = entries.find("gap_ratios")) cfg.gap_ratios = parse_list("gap_ratios", *e);

    require(cfg.omega0 > 0.0, "omega0 must be positive", entries.line("omega0"));
    require(cfg.tau > 0.0, "tau must be positive", entries.line("tau"));
    require(cfg.hold >= 0.0, "hold must be non-negative", entries.line("hold"));
    require(cfg.tau_min > 0.0, "tau_min must be positive", entries.line("tau_min"));
    require(cfg.tau_max > 0.0, "tau_max must be positive", entries.line("tau_max"));
    require(cfg.tau_max >= cfg.tau_min, "tau_max must not be below tau_min", entries.line("tau_max"));
    require(cfg.tau_points >= 1, "tau_points must be at least 1", entries.line("tau_points"));
    require(cfg.sample_stride >= 1, "sample_stride must be at least 1", entries.line("sample_stride"));
    require(cfg.tmax > 0.0, "tmax must be positive", entries.line("tmax"));
    require(!cfg.gap_ratios.empty() &&
                std::all_of(cfg.gap_ratios.begin(), cfg.gap_ratios.end(), [](double g) { return g > 0.0; }),
            "gap_ratios must be positive", entries.line("gap_ratios"));
    return cfg;
}

}  // namespace qbattery
