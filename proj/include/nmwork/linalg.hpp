// linalg.hpp: Fixed-size complex matrices, density matrices and spectral entropy
//
// Everything here works on 2x2 (one qubit) or 4x4 (system + memory) matrices.
// Two-qubit ordering is |s q> with the system S as the left tensor factor, so
// the basis is |00>, |01>, |10>, |11> and |psi-> = (|10> - |01>)/sqrt(2).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmwork {

using Complex = std::complex<double>;

template <std::size_t N>
class Matrix {
    static_assert(N == 2 || N == 4, "only one- and two-qubit matrices are supported");

public:
    static constexpr std::size_t dim = N;

    Matrix() { data_.fill(Complex{0.0, 0.0}); }

    // Row-major initializer; missing entries are zero.
    Matrix(std::initializer_list<Complex> row_major) {
        if (row_major.size() != N * N)
            throw std::invalid_argument("Matrix: initializer must have dim*dim entries");
        std::copy(row_major.begin(), row_major.end(), data_.begin());
    }

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::array<double, N>& d) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    // |v><v|
    static Matrix projector(const std::array<Complex, N>& v) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = v[i] * std::conj(v[j]);
        return m;
    }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

    Matrix adjoint() const {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
        return m;
    }

    Complex trace() const {
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        });
    }

    // max |M_ij - conj(M_ji)|
    double hermiticity_defect() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i; j < N; ++j)
                worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return worst;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(Complex s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) continue;
                for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    // Largest entrywise distance.
    friend double max_abs_diff(const Matrix& a, const Matrix& b) {
        double worst = 0.0;
        for (std::size_t k = 0; k < N * N; ++k)
            worst = std::max(worst, std::abs(a.data_[k] - b.data_[k]));
        return worst;
    }

private:
    std::array<Complex, N * N> data_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

namespace pauli {
inline Mat2 id() { return Mat2::identity(); }
inline Mat2 x() { return Mat2{0.0, 1.0, 1.0, 0.0}; }
inline Mat2 y() { return Mat2{0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0}; }
inline Mat2 z() { return Mat2{1.0, 0.0, 0.0, -1.0}; }

// sigma_0 .. sigma_3
inline std::array<Mat2, 4> all() { return {id(), x(), y(), z()}; }
} // namespace pauli

// Kronecker product a (x) b; a acts on the system, b on the memory.
inline Mat4 tensor(const Mat2& a, const Mat2& b) {
    Mat4 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

// ---------------------------------------------------------------------------
// Hermitian eigenvalues by cyclic Jacobi rotations.

namespace detail {

template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(Matrix<N> a) {
    constexpr int max_sweeps = 100;
    const double scale = std::max(1.0, a.frobenius_norm());
    const double threshold = 1e-14 * scale;

    auto off_norm = [&a] {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() >= threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag < std::numeric_limits<double>::min()) continue;

                // Phase-rotate column q so that a(p,q) becomes real, then do a
                // real symmetric Jacobi step on the (p,q) plane.
                const Complex phase = std::conj(a(p, q)) / mag; // e^{-i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double zeta = (aqq - app) / (2.0 * mag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;

                // V = diag(1, phase) * [[c, s], [-s, c]] restricted to (p, q)
                const Complex vpp = c;
                const Complex vpq = s;
                const Complex vqp = -s * phase;
                const Complex vqq = c * phase;

                for (std::size_t k = 0; k < N; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * vpp + akq * vqp;
                    a(k, q) = akp * vpq + akq * vqq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
                    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::array<double, N> eig{};
    for (std::size_t i = 0; i < N; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace detail

// Ascending eigenvalues of (M + M^dagger)/2. Throws std::invalid_argument
// when M is not Hermitian within `tolerance`.
template <std::size_t N>
std::array<double, N> herm_eigvals(const Matrix<N>& m, double tolerance = 1e-8) {
    if (!m.all_finite()) throw std::invalid_argument("herm_eigvals: non-finite entry");
    if (m.hermiticity_defect() > tolerance)
        throw std::invalid_argument("herm_eigvals: matrix is not Hermitian");
    Matrix<N> h = m + m.adjoint();
    h *= 0.5;
    return detail::jacobi_eigenvalues(h);
}

// ---------------------------------------------------------------------------

enum class Party { system, memory };

inline const char* to_string(Party p) { return p == Party::system ? "system" : "memory"; }

// Validated quantum state: Hermitian, unit trace, positive semidefinite.
template <std::size_t N>
class DensityMatrix {
public:
    static constexpr double default_tolerance = 1e-9;

    explicit DensityMatrix(const Matrix<N>& m, double tolerance = default_tolerance)
        : mat_(m), tolerance_(tolerance) {
        if (!(tolerance > 0.0)) throw std::invalid_argument("DensityMatrix: tolerance must be positive");
        if (!m.all_finite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
        if (m.hermiticity_defect() > tolerance)
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        if (std::abs(m.trace() - Complex{1.0, 0.0}) > tolerance)
            throw std::invalid_argument("DensityMatrix: trace differs from one");
        Matrix<N> h = m + m.adjoint();
        h *= 0.5;
        eigenvalues_ = detail::jacobi_eigenvalues(h);
        if (eigenvalues_.front() < -tolerance)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                        std::to_string(eigenvalues_.front()));
        mat_ = h;
    }

    static DensityMatrix maximally_mixed() { return DensityMatrix(Matrix<N>::identity() * Complex{1.0 / N}); }

    const Matrix<N>& matrix() const { return mat_; }
    double tolerance() const { return tolerance_; }
    // Ascending.
    const std::array<double, N>& eigenvalues() const { return eigenvalues_; }

private:
    Matrix<N> mat_;
    double tolerance_;
    std::array<double, N> eigenvalues_{};
};

using Qubit = DensityMatrix<2>;
using TwoQubit = DensityMatrix<4>;

// |psi-> = (|10> - |01>)/sqrt(2)
inline TwoQubit singlet() {
    const double h = 1.0 / std::sqrt(2.0);
    return TwoQubit(Mat4::projector({0.0, -h, h, 0.0}));
}

inline Mat4 tensor(const Qubit& a, const Qubit& b) { return tensor(a.matrix(), b.matrix()); }

// Reduced state of the kept party.
inline Qubit partial_trace(const TwoQubit& rho, Party keep) {
    const Mat4& m = rho.matrix();
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                if (keep == Party::system)
                    r(i, j) += m(2 * i + k, 2 * j + k);
                else
                    r(i, j) += m(2 * k + i, 2 * k + j);
            }
    return Qubit(r, rho.tolerance());
}

// -x log2 x with 0 log 0 = 0.
inline double entropy_term(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

// Von Neumann entropy in bits. Eigenvalues in [-1e-9, 0) are round-off and
// count as zero; anything more negative is rejected.
template <std::size_t N>
double von_neumann_entropy(const DensityMatrix<N>& rho) {
    constexpr double clamp = 1e-9;
    double h = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda < -clamp) throw std::invalid_argument("von_neumann_entropy: negative eigenvalue");
        h += entropy_term(std::max(lambda, 0.0));
    }
    return std::clamp(h, 0.0, std::log2(static_cast<double>(N)));
}

} // namespace nmwork
