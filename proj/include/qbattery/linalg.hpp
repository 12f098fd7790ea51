#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qbattery {

using cplx = std::complex<double>;
using Vec3 = std::array<cplx, 3>;

/// Raised for arguments outside an operation's domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot produce a trustworthy result.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense 3x3 complex matrix, row-major.
class ComplexMatrix3 {
public:
    constexpr ComplexMatrix3() = default;

    static ComplexMatrix3 zero() { return {}; }
    static ComplexMatrix3 identity();
    static ComplexMatrix3 diagonal(double d0, double d1, double d2);
    /// |a><b|
    static ComplexMatrix3 outer(const Vec3& a, const Vec3& b);

    cplx& operator()(std::size_t i, std::size_t j) { return m_[3 * i + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return m_[3 * i + j]; }

    ComplexMatrix3 adjoint() const;
    cplx trace() const;
    double max_abs() const;
    /// Largest entry of |M - M^dagger|.
    double hermiticity_error() const;
    /// Frobenius norm of the strictly off-diagonal part.
    double off_diagonal_norm() const;

    ComplexMatrix3& operator+=(const ComplexMatrix3& o);
    ComplexMatrix3& operator-=(const ComplexMatrix3& o);
    ComplexMatrix3& operator*=(cplx s);

    friend ComplexMatrix3 operator+(ComplexMatrix3 a, const ComplexMatrix3& b) { return a += b; }
    friend ComplexMatrix3 operator-(ComplexMatrix3 a, const ComplexMatrix3& b) { return a -= b; }
    friend ComplexMatrix3 operator*(ComplexMatrix3 a, cplx s) { return a *= s; }
    friend ComplexMatrix3 operator*(cplx s, ComplexMatrix3 a) { return a *= s; }
    friend ComplexMatrix3 operator*(const ComplexMatrix3& a, const ComplexMatrix3& b);
    friend Vec3 operator*(const ComplexMatrix3& a, const Vec3& v);

private:
    std::array<cplx, 9> m_{};
};

cplx inner(const Vec3& a, const Vec3& b);  // <a|b>
double norm(const Vec3& v);
Vec3 scaled(const Vec3& v, cplx s);

ComplexMatrix3 commutator(const ComplexMatrix3& a, const ComplexMatrix3& b);
ComplexMatrix3 anticommutator(const ComplexMatrix3& a, const ComplexMatrix3& b);

struct HermitianEigen {
    std::array<double, 3> values;   // ascending
    std::array<Vec3, 3> vectors;    // vectors[k] pairs with values[k]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian 3x3 matrix.
///
/// Sweeps until the off-diagonal Frobenius norm drops below 1e-13 (relative
/// to the matrix scale when that exceeds one), capped at 100 sweeps. Each
/// eigenvector is phase-fixed so its first non-negligible component is real
/// and positive. Throws InputError when M deviates from Hermitian by more
/// than 1e-10, NumericError if the post-conditions miss `tol`.
HermitianEigen eig3_hermitian(const ComplexMatrix3& m, double tol = 1e-10);

struct ValidationTolerances {
    double trace = 1e-9;
    double hermiticity = 1e-12;
    double min_eigenvalue = -1e-8;
};

struct ValidationReport {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    bool ok = false;
};

/// Qutrit density matrix in the energy eigenbasis. Construction does not
/// enforce the physical invariants; use validate() to check them.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(const ComplexMatrix3& m) : m_(m) {}

    /// |e_level><e_level| with level in {1,2,3}.
    static DensityMatrix pure(int level);
    /// |psi><psi| for a normalized ket.
    static DensityMatrix from_ket(const Vec3& psi);

    const ComplexMatrix3& matrix() const { return m_; }
    std::array<double, 3> populations() const;
    double purity() const;
    /// (rho + rho^dagger) / 2
    DensityMatrix hermitized() const;

private:
    ComplexMatrix3 m_{};
};

ValidationReport validate(const DensityMatrix& rho, const ValidationTolerances& tol = {});

}  // namespace qbattery
