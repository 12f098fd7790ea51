#include "qbattery/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qbattery {

ComplexMatrix3 ComplexMatrix3::identity() { return diagonal(1.0, 1.0, 1.0); }

ComplexMatrix3 ComplexMatrix3::diagonal(double d0, double d1, double d2) {
    ComplexMatrix3 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    return m;
}

ComplexMatrix3 ComplexMatrix3::outer(const Vec3& a, const Vec3& b) {
    ComplexMatrix3 m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
}

ComplexMatrix3 ComplexMatrix3::adjoint() const {
    ComplexMatrix3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

cplx ComplexMatrix3::trace() const { return m_[0] + m_[4] + m_[8]; }

double ComplexMatrix3::max_abs() const {
    double r = 0.0;
    for (const auto& z : m_) r = std::max(r, std::abs(z));
    return r;
}

double ComplexMatrix3::hermiticity_error() const {
    double r = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j)
            r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return r;
}

double ComplexMatrix3::off_diagonal_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) s += std::norm((*this)(i, j));
    return std::sqrt(s);
}

ComplexMatrix3& ComplexMatrix3::operator+=(const ComplexMatrix3& o) {
    for (std::size_t k = 0; k < 9; ++k) m_[k] += o.m_[k];
    return *this;
}

ComplexMatrix3& ComplexMatrix3::operator-=(const ComplexMatrix3& o) {
    for (std::size_t k = 0; k < 9; ++k) m_[k] -= o.m_[k];
    return *this;
}

ComplexMatrix3& ComplexMatrix3::operator*=(cplx s) {
    for (auto& z : m_) z *= s;
    return *this;
}

ComplexMatrix3 operator*(const ComplexMatrix3& a, const ComplexMatrix3& b) {
    ComplexMatrix3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return r;
}

Vec3 operator*(const ComplexMatrix3& a, const Vec3& v) {
    Vec3 r{};
    for (std::size_t i = 0; i < 3; ++i) r[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
    return r;
}

cplx inner(const Vec3& a, const Vec3& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

double norm(const Vec3& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }

Vec3 scaled(const Vec3& v, cplx s) { return {v[0] * s, v[1] * s, v[2] * s}; }

ComplexMatrix3 commutator(const ComplexMatrix3& a, const ComplexMatrix3& b) { return a * b - b * a; }

ComplexMatrix3 anticommutator(const ComplexMatrix3& a, const ComplexMatrix3& b) { return a * b + b * a; }

namespace {

constexpr double kOffDiagonalTarget = 1e-13;
constexpr int kMaxSweeps = 100;
constexpr double kHermitianInputTol = 1e-10;

// Unitary J such that (J^dagger A J)(p,q) = 0: a phase on column q that
// makes A(p,q) real, followed by a real Jacobi rotation in the (p,q) plane.
void rotate(ComplexMatrix3& a, ComplexMatrix3& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cplx phase = std::conj(apq) / r;  // e^{-i arg(apq)}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * r);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    ComplexMatrix3 j = ComplexMatrix3::identity();
    j(p, p) = c;
    j(p, q) = s;
    j(q, p) = -s * phase;
    j(q, q) = c * phase;

    a = j.adjoint() * a * j;
    v = v * j;
    // Remove rounding residue on the entries the rotation is meant to zero.
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

void fix_phase(Vec3& vec) {
    for (const auto& z : vec) {
        if (std::abs(z) > 1e-12) {
            const cplx ph = std::conj(z) / std::abs(z);
            vec = scaled(vec, ph);
            return;
        }
    }
}

}  // namespace

HermitianEigen eig3_hermitian(const ComplexMatrix3& m, double tol) {
    if (m.hermiticity_error() > kHermitianInputTol)
        throw InputError("eig3_hermitian: matrix is not Hermitian");

    ComplexMatrix3 a = m;
    for (std::size_t i = 0; i < 3; ++i) a(i, i) = a(i, i).real();
    ComplexMatrix3 v = ComplexMatrix3::identity();

    const double target = kOffDiagonalTarget * std::max(1.0, m.max_abs());
    for (int sweep = 0; sweep < kMaxSweeps && a.off_diagonal_norm() >= target; ++sweep) {
        rotate(a, v, 0, 1);
        rotate(a, v, 0, 2);
        rotate(a, v, 1, 2);
    }
    if (a.off_diagonal_norm() >= target) throw NumericError("eig3_hermitian: Jacobi sweeps did not converge");

    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    HermitianEigen out{};
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t col = order[k];
        out.values[k] = a(col, col).real();
        out.vectors[k] = {v(0, col), v(1, col), v(2, col)};
        fix_phase(out.vectors[k]);
    }

    const double scale = std::max(1.0, m.max_abs());
    for (std::size_t k = 0; k < 3; ++k) {
        const Vec3 mv = m * out.vectors[k];
        for (std::size_t i = 0; i < 3; ++i)
            if (std::abs(mv[i] - out.values[k] * out.vectors[k][i]) > tol * scale)
                throw NumericError("eig3_hermitian: eigen-relation residual exceeds tolerance");
        for (std::size_t l = 0; l < 3; ++l) {
            const double expected = k == l ? 1.0 : 0.0;
            if (std::abs(inner(out.vectors[k], out.vectors[l]) - expected) > tol)
                throw NumericError("eig3_hermitian: eigenvectors not orthonormal");
        }
    }
    return out;
}

DensityMatrix DensityMatrix::pure(int level) {
    if (level < 1 || level > 3) throw InputError("dm_pure: level must be 1, 2 or 3, got " + std::to_string(level));
    ComplexMatrix3 m;
    const auto idx = static_cast<std::size_t>(level - 1);
    m(idx, idx) = 1.0;
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_ket(const Vec3& psi) { return DensityMatrix(ComplexMatrix3::outer(psi, psi)); }

std::array<double, 3> DensityMatrix::populations() const {
    return {m_(0, 0).real(), m_(1, 1).real(), m_(2, 2).real()};
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

DensityMatrix DensityMatrix::hermitized() const { return DensityMatrix((m_ + m_.adjoint()) * 0.5); }

ValidationReport validate(const DensityMatrix& rho, const ValidationTolerances& tol) {
    ValidationReport r;
    const auto& m = rho.matrix();
    r.trace_error = std::abs(m.trace() - 1.0);
    r.hermiticity_error = m.hermiticity_error();
    if (r.hermiticity_error <= kHermitianInputTol) {
        r.min_eigenvalue = eig3_hermitian(rho.hermitized().matrix()).values[0];
    } else {
        // Eigenvalues of a non-Hermitian matrix are not meaningful here.
        r.min_eigenvalue = -std::numeric_limits<double>::infinity();
    }
    r.ok = r.trace_error < tol.trace && r.hermiticity_error < tol.hermiticity && r.min_eigenvalue >= tol.min_eigenvalue;
    return r;
}

}  // namespace qbattery
