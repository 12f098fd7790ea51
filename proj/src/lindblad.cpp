#include "qbattery/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qbattery/observables.hpp"

namespace qbattery {

NoiseRates NoiseRates::transmon(double gamma21) {
    NoiseRates r;
    r.gamma21 = gamma21;
    r.gamma32 = 2.0 * gamma21;
    r.deph2 = gamma21;
    r.deph3 = 2.0 * gamma21;
    return r;
}

void NoiseRates::validate() const {
    for (double r : {gamma21, gamma32, gamma31, deph2, deph3})
        if (!(r >= 0.0) || !std::isfinite(r)) throw InputError("noise rates must be finite and non-negative");
}

bool NoiseRates::is_zero() const {
    return gamma21 == 0.0 && gamma32 == 0.0 && gamma31 == 0.0 && deph2 == 0.0 && deph3 == 0.0;
}

namespace {

struct DecayChannel {
    std::size_t upper;
    std::size_t lower;
    double rate;
};

std::array<DecayChannel, 3> decay_channels(const NoiseRates& r) {
    return {{{1, 0, r.gamma21}, {2, 1, r.gamma32}, {2, 0, r.gamma31}}};
}

}  // namespace

ComplexMatrix3 dissipator_relaxation(const ComplexMatrix3& rho, const NoiseRates& rates) {
    ComplexMatrix3 out;
    for (const auto& ch : decay_channels(rates)) {
        if (ch.rate == 0.0) continue;
        const auto u = ch.upper;
        const auto l = ch.lower;
        // s_lu rho s_ul = rho(u,u) |l><l|
        out(l, l) += ch.rate * rho(u, u);
        // -{s_uu, rho}/2 touches row u and column u
        for (std::size_t k = 0; k < 3; ++k) {
            out(u, k) -= 0.5 * ch.rate * rho(u, k);
            out(k, u) -= 0.5 * ch.rate * rho(k, u);
        }
    }
    return out;
}

ComplexMatrix3 dissipator_dephasing(const ComplexMatrix3& rho, const NoiseRates& rates) {
    ComplexMatrix3 out;
    const std::array<std::pair<std::size_t, double>, 2> levels{{{1, rates.deph2}, {2, rates.deph3}}};
    for (const auto& [j, g] : levels) {
        if (g == 0.0) continue;
        for (std::size_t k = 0; k < 3; ++k) {
            if (k == j) continue;
            out(j, k) -= 0.5 * g * rho(j, k);
            out(k, j) -= 0.5 * g * rho(k, j);
        }
    }
    return out;
}

ComplexMatrix3 lindblad_rhs_frozen(const ComplexMatrix3& rho, const DriveFields& fields, const NoiseRates& rates) {
    ComplexMatrix3 d = commutator(h_int(fields), rho) * cplx(0.0, -1.0);
    d += dissipator_relaxation(rho, rates);
    d += dissipator_dephasing(rho, rates);
    return d;
}

ComplexMatrix3 lindblad_rhs(double t, const ComplexMatrix3& rho, const std::optional<Protocol>& protocol,
                            const NoiseRates& rates) {
    if (protocol) return lindblad_rhs_frozen(rho, protocol->fields(t), rates);
    return dissipator_relaxation(rho, rates) + dissipator_dephasing(rho, rates);
}

IntegrationDiverged::IntegrationDiverged(double t, const ValidationReport& report)
    : NumericError([&] {
          std::ostringstream os;
          os << "integration diverged at t=" << t << " (trace_error=" << report.trace_error
             << ", hermiticity_error=" << report.hermiticity_error << ", min_eigenvalue=" << report.min_eigenvalue
             << ")";
          return os.str();
      }()),
      time_(t),
      report_(report) {}

std::size_t default_steps(double duration, double peak_field) {
    const double n = std::ceil(2000.0 * duration * std::max(1.0, peak_field));
    return std::max<std::size_t>(20000, static_cast<std::size_t>(n));
}

namespace {

template <class Rhs>
EvolutionTrace integrate(const DensityMatrix& rho0, Rhs&& rhs, const Spectrum& spectrum, const EvolveOptions& opt,
                         double peak_field) {
    if (!(opt.duration > 0.0)) throw InputError("evolve: duration must be positive");
    if (opt.sample_every == 0) throw InputError("evolve: sample_every must be at least 1");
    const std::size_t steps = opt.steps ? opt.steps : default_steps(opt.duration, peak_field);
    const double h = opt.duration / static_cast<double>(steps);

    EvolutionTrace trace;
    trace.samples.reserve(steps / opt.sample_every + 2);
    auto record = [&](double t, const DensityMatrix& rho) {
        const auto report = validate(rho, opt.tolerances);
        if (!report.ok) throw IntegrationDiverged(t, report);
        trace.samples.push_back({t, rho, rho.populations(), ergotropy(rho, spectrum), report.trace_error});
    };

    ComplexMatrix3 y = rho0.matrix();
    record(0.0, rho0);
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = h * static_cast<double>(n);
        const ComplexMatrix3 k1 = rhs(t, y);
        const ComplexMatrix3 k2 = rhs(t + 0.5 * h, y + k1 * (0.5 * h));
        const ComplexMatrix3 k3 = rhs(t + 0.5 * h, y + k2 * (0.5 * h));
        const ComplexMatrix3 k4 = rhs(t + h, y + k3 * h);
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        y = (y + y.adjoint()) * 0.5;
        if ((n + 1) % opt.sample_every == 0 || n + 1 == steps) {
            // Last step lands on the duration exactly.
            const double t_next = n + 1 == steps ? opt.duration : h * static_cast<double>(n + 1);
            record(t_next, DensityMatrix(y));
        }
    }
    return trace;
}

}  // namespace

EvolutionTrace evolve(const DensityMatrix& rho0, const std::optional<Protocol>& protocol, const NoiseRates& rates,
                      const Spectrum& spectrum, const EvolveOptions& options) {
    rates.validate();
    if (protocol && options.duration > protocol->end_time() * (1.0 + 1e-12))
        throw InputError("evolve: duration exceeds protocol domain");
    const double peak = protocol ? protocol->omega0() : 0.0;
    const double t_end = protocol ? protocol->end_time() : 0.0;
    auto rhs = [&](double t, const ComplexMatrix3& rho) {
        // RK stages may overshoot the domain edge by rounding.
        return lindblad_rhs(protocol ? std::min(t, t_end) : t, rho, protocol, rates);
    };
    return integrate(rho0, rhs, spectrum, options, peak);
}

EvolutionTrace evolve_frozen(const DensityMatrix& rho0, const DriveFields& fields, const NoiseRates& rates,
                             const Spectrum& spectrum, const EvolveOptions& options) {
    rates.validate();
    auto rhs = [&](double, const ComplexMatrix3& rho) { return lindblad_rhs_frozen(rho, fields, rates); };
    return integrate(rho0, rhs, spectrum, options, std::hypot(fields.omega12, fields.omega23));
}

Liouvillian9::Vector Liouvillian9::apply(const Vector& v) const {
    Vector r{};
    for (std::size_t i = 0; i < kDim; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < kDim; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

ComplexMatrix3 Liouvillian9::apply(const ComplexMatrix3& rho) const { return unvectorize(apply(vectorize(rho))); }

Liouvillian9::Vector Liouvillian9::vectorize(const ComplexMatrix3& rho) {
    Vector v{};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i) v[i + 3 * j] = rho(i, j);
    return v;
}

ComplexMatrix3 Liouvillian9::unvectorize(const Vector& v) {
    ComplexMatrix3 m;
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i) m(i, j) = v[i + 3 * j];
    return m;
}

double Liouvillian9::norm1() const {
    double best = 0.0;
    for (std::size_t j = 0; j < kDim; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < kDim; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

Liouvillian9 operator*(const Liouvillian9& a, const Liouvillian9& b) {
    Liouvillian9 r;
    constexpr auto n = Liouvillian9::kDim;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Liouvillian9 Liouvillian9::exponential(double dt) const {
    constexpr int kTaylorTerms = 16;
    constexpr double kScaledNormBound = 0.5;

    Liouvillian9 a = *this;
    for (auto& z : a.m_) z *= dt;
    int squarings = 0;
    const double n1 = a.norm1();
    if (!std::isfinite(n1)) throw NumericError("matrix exponential: non-finite generator");
    if (n1 >= kScaledNormBound) squarings = static_cast<int>(std::floor(std::log2(n1 / kScaledNormBound))) + 1;
    const double scale = std::ldexp(1.0, -squarings);
    for (auto& z : a.m_) z *= scale;

    Liouvillian9 result;
    Liouvillian9 term;
    for (std::size_t i = 0; i < kDim; ++i) {
        result(i, i) = 1.0;
        term(i, i) = 1.0;
    }
    for (int k = 1; k <= kTaylorTerms; ++k) {
        term = term * a;
        for (auto& z : term.m_) z /= static_cast<double>(k);
        for (std::size_t idx = 0; idx < result.m_.size(); ++idx) result.m_[idx] += term.m_[idx];
    }
    for (int s = 0; s < squarings; ++s) result = result * result;

    for (const auto& z : result.m_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericError("matrix exponential: series did not converge");
    return result;
}

namespace {

// coeff * vec(A X B) = coeff * (B^T kron A) vec(X)
void add_sandwich(Liouvillian9& l, const ComplexMatrix3& a, const ComplexMatrix3& b, cplx coeff) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t m = 0; m < 3; ++m) l(i + 3 * j, k + 3 * m) += coeff * b(m, j) * a(i, k);
}

void add_jump(Liouvillian9& l, const ComplexMatrix3& jump, double rate) {
    if (rate == 0.0) return;
    const auto id = ComplexMatrix3::identity();
    const auto jd = jump.adjoint();
    const auto jdj = jd * jump;
    add_sandwich(l, jump, jd, rate);
    add_sandwich(l, jdj, id, -0.5 * rate);
    add_sandwich(l, id, jdj, -0.5 * rate);
}

ComplexMatrix3 sigma(std::size_t k, std::size_t j) {
    ComplexMatrix3 s;
    s(k, j) = 1.0;
    return s;
}

}  // namespace

Liouvillian9 liouvillian_matrix(double omega12, double omega23, const NoiseRates& rates) {
    Liouvillian9 l;
    const auto h = h_int(omega12, omega23);
    const auto id = ComplexMatrix3::identity();
    add_sandwich(l, h, id, cplx(0.0, -1.0));
    add_sandwich(l, id, h, cplx(0.0, 1.0));
    add_jump(l, sigma(0, 1), rates.gamma21);
    add_jump(l, sigma(1, 2), rates.gamma32);
    add_jump(l, sigma(0, 2), rates.gamma31);
    add_jump(l, sigma(1, 1), rates.deph2);
    add_jump(l, sigma(2, 2), rates.deph3);
    return l;
}

DensityMatrix propagate_piecewise_constant(const DensityMatrix& rho0, const std::vector<FieldSegment>& schedule,
                                           const NoiseRates& rates) {
    rates.validate();
    auto v = Liouvillian9::vectorize(rho0.matrix());
    for (const auto& seg : schedule) {
        if (!(seg.dt > 0.0)) throw InputError("propagate_piecewise_constant: segment dt must be positive");
        v = liouvillian_matrix(seg.omega12, seg.omega23, rates).exponential(seg.dt).apply(v);
    }
    return DensityMatrix(Liouvillian9::unvectorize(v));
}

std::vector<FieldSegment> staircase(const Protocol& protocol, std::size_t segments) {
    if (segments == 0) throw InputError("staircase: need at least one segment");
    std::vector<FieldSegment> out;
    out.reserve(segments);
    const double dt = protocol.tau() / static_cast<double>(segments);
    for (std::size_t k = 0; k < segments; ++k) {
        const auto f = protocol.fields((static_cast<double>(k) + 0.5) * dt);
        out.push_back({f.omega12, f.omega23, dt});
    }
    return out;
}

}  // namespace qbattery
