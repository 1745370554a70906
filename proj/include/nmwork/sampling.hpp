// sampling.hpp: Random states and unitaries for property checks

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>

#include "nmwork/linalg.hpp"

namespace nmwork {

template <std::size_t N, class Rng>
Matrix<N> random_ginibre(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m(i, j) = Complex{normal(rng), normal(rng)};
    return m;
}

// Haar-distributed unitary: Gram-Schmidt on the columns of a Ginibre matrix.
template <std::size_t N, class Rng>
Matrix<N> random_unitary(Rng& rng) {
    Matrix<N> m = random_ginibre<N>(rng);
    for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            Complex overlap{};
            for (std::size_t r = 0; r < N; ++r) overlap += std::conj(m(r, prev)) * m(r, c);
            for (std::size_t r = 0; r < N; ++r) m(r, c) -= overlap * m(r, prev);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < N; ++r) norm += std::norm(m(r, c));
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < N; ++r) m(r, c) /= norm;
    }
    return m;
}

// rho = A A^dagger / tr(A A^dagger), A Ginibre (Hilbert-Schmidt measure).
template <std::size_t N, class Rng>
DensityMatrix<N> random_density_matrix(Rng& rng) {
    const Matrix<N> a = random_ginibre<N>(rng);
    Matrix<N> rho = a * a.adjoint();
    rho *= Complex{1.0 / rho.trace().real()};
    return DensityMatrix<N>(rho);
}

template <std::size_t N, class Rng>
Matrix<N> random_hermitian(Rng& rng) {
    const Matrix<N> a = random_ginibre<N>(rng);
    Matrix<N> h = a + a.adjoint();
    h *= Complex{0.5};
    return h;
}

} // namespace nmwork
