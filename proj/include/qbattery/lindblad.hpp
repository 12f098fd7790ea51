#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qbattery/battery.hpp"
#include "qbattery/linalg.hpp"

namespace qbattery {

/// Markovian noise rates in units of Omega0. gamma21 and gamma32 drive the
/// sequential cascade 3 -> 2 -> 1; gamma31 is the direct 3 -> 1 channel,
/// off by default. deph2/deph3 are the pure dephasing rates of levels 2, 3.
struct NoiseRates {
    double gamma21 = 0.0;
    double gamma32 = 0.0;
    double gamma31 = 0.0;
    double deph2 = 0.0;
    double deph3 = 0.0;

    /// Transmon relations: gamma32 = 2 gamma21, deph2 = gamma21, deph3 = 2 gamma21.
    static NoiseRates transmon(double gamma21);

    /// Throws InputError for negative or non-finite rates.
    void validate() const;
    bool is_zero() const;
};

/// Relaxation part of the dissipator: for each enabled decay u -> l with rate
/// G, G (s_lu rho s_ul - {s_uu, rho}/2).
ComplexMatrix3 dissipator_relaxation(const ComplexMatrix3& rho, const NoiseRates& rates);
/// Pure dephasing: sum over j = 2,3 of deph_j (s_jj rho s_jj - {s_jj, rho}/2).
ComplexMatrix3 dissipator_dephasing(const ComplexMatrix3& rho, const NoiseRates& rates);

/// d rho / dt in the rotating frame. With a protocol this is the driven
/// charging equation; without one it is free decay, integrated in the H0
/// interaction frame so only the dissipators act.
ComplexMatrix3 lindblad_rhs(double t, const ComplexMatrix3& rho, const std::optional<Protocol>& protocol,
                            const NoiseRates& rates);
/// Same generator with the drive fields held fixed.
ComplexMatrix3 lindblad_rhs_frozen(const ComplexMatrix3& rho, const DriveFields& fields, const NoiseRates& rates);

struct EvolutionSample {
    double t = 0.0;
    DensityMatrix rho;
    std::array<double, 3> populations{};
    double ergotropy = 0.0;
    double trace_error = 0.0;
};

struct EvolutionTrace {
    std::vector<EvolutionSample> samples;

    const EvolutionSample& final() const { return samples.back(); }
};

/// Raised when a sampled state fails validation; carries the sample time.
class IntegrationDiverged : public NumericError {
public:
    IntegrationDiverged(double t, const ValidationReport& report);
    double time() const { return time_; }
    const ValidationReport& report() const { return report_; }

private:
    double time_;
    ValidationReport report_;
};

struct EvolveOptions {
    double duration = 0.0;
    std::size_t steps = 0;           // 0 selects default_steps()
    std::size_t sample_every = 1;    // record every n-th step; the final step is always recorded
    ValidationTolerances tolerances{};
};

/// Step rule for charging runs: max(20000, ceil(2000 * duration * max(1, peak field))).
std::size_t default_steps(double duration, double peak_field);

/// Fixed-step classical RK4 integration. rho is re-Hermitized after every
/// step and validated at every sample; a failure throws IntegrationDiverged.
EvolutionTrace evolve(const DensityMatrix& rho0, const std::optional<Protocol>& protocol, const NoiseRates& rates,
                      const Spectrum& spectrum, const EvolveOptions& options);
/// As evolve(), with the drive fields held fixed over the whole run.
EvolutionTrace evolve_frozen(const DensityMatrix& rho0, const DriveFields& fields, const NoiseRates& rates,
                             const Spectrum& spectrum, const EvolveOptions& options);

/// Generator acting on column-stacked rho: vec(rho)[i + 3 j] = rho(i, j).
/// Assembled from Kronecker products of the Hamiltonian and jump operators,
/// independently of lindblad_rhs.
class Liouvillian9 {
public:
    static constexpr std::size_t kDim = 9;
    using Vector = std::array<cplx, kDim>;

    cplx& operator()(std::size_t i, std::size_t j) { return m_[kDim * i + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return m_[kDim * i + j]; }

    Vector apply(const Vector& v) const;
    ComplexMatrix3 apply(const ComplexMatrix3& rho) const;
    /// exp(L * dt) by scaling and squaring with a 16-term Taylor series.
    Liouvillian9 exponential(double dt) const;
    double norm1() const;

    static Vector vectorize(const ComplexMatrix3& rho);
    static ComplexMatrix3 unvectorize(const Vector& v);

    friend Liouvillian9 operator*(const Liouvillian9& a, const Liouvillian9& b);

private:
    std::array<cplx, kDim * kDim> m_{};
};

Liouvillian9 liouvillian_matrix(double omega12, double omega23, const NoiseRates& rates);

struct FieldSegment {
    double omega12 = 0.0;
    double omega23 = 0.0;
    double dt = 0.0;
};

/// Applies exp(L_k dt_k) segment by segment. Throws InputError for dt <= 0
/// and NumericError if the exponential series produces non-finite values.
DensityMatrix propagate_piecewise_constant(const DensityMatrix& rho0, const std::vector<FieldSegment>& schedule,
                                           const NoiseRates& rates);

/// Staircase of a protocol's ramp: n equal segments over [0, tau] with the
/// fields evaluated at each segment midpoint.
std::vector<FieldSegment> staircase(const Protocol& protocol, std::size_t segments);

}  // namespace qbattery
