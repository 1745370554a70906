// ising.hpp: Central qubit coupled to a transverse-field Ising chain
//
// The qubit in |1> shifts the chain's transverse field from lambda to
// lambda + delta. With periodic momenta k_m = 2 pi m / N (m = 1..N/2),
//
//   eps_k(l)   = 2 J sqrt(1 + l^2 - 2 l cos k)
//   tan 2theta_k(l) = sin k / (l - cos k),   2theta_k in [0, pi)
//   beta_k     = theta_k(lambda + delta) - theta_k(lambda)
//   L(t)       = prod_k [1 - sin^2(2 beta_k) sin^2(eps_k(lambda + delta) t)]
//
// and the qubit dephases with rate gamma(t) = -L'(t) / (4 L(t)).

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmwork/channels.hpp"
#include "nmwork/errors.hpp"
#include "nmwork/linalg.hpp"

namespace nmwork {

struct IsingParams {
    double J = 1.0;
    double lambda_field = 0.0;
    double delta = 0.1;
    int N = 4000;

    void validate() const {
        if (!(J > 0.0) || !std::isfinite(J)) throw std::invalid_argument("IsingParams: J must be positive");
        if (!(lambda_field >= 0.0) || !std::isfinite(lambda_field))
            throw std::invalid_argument("IsingParams: transverse field must be >= 0");
        if (!std::isfinite(delta)) throw std::invalid_argument("IsingParams: delta must be finite");
        if (N < 2 || N % 2 != 0) throw std::invalid_argument("IsingParams: N must be even and >= 2");
    }

    // Field felt by the chain when the qubit is in |1>.
    double perturbed_field() const { return lambda_field + delta; }
};

struct IsingMode {
    double k;
    double energy;
    double bogoliubov_angle;
};

// Quasiparticle modes of the chain at transverse field `field`.
inline std::vector<IsingMode> mode_spectrum(const IsingParams& params, double field) {
    params.validate();
    const int half = params.N / 2;
    std::vector<IsingMode> modes;
    modes.reserve(static_cast<std::size_t>(half));
    for (int m = 1; m <= half; ++m) {
        const double k = 2.0 * std::numbers::pi * m / params.N;
        const double energy = 2.0 * params.J * std::sqrt(1.0 + field * field - 2.0 * field * std::cos(k));
        // atan2 lands in [0, pi] because sin k >= 0; pi itself only for sin k = 0.
        double two_theta = std::atan2(std::sin(k), field - std::cos(k));
        if (two_theta >= std::numbers::pi) two_theta -= std::numbers::pi;
        modes.push_back({k, energy, 0.5 * two_theta});
    }
    return modes;
}

// Precomputed (sin^2 2beta_k, eps_k) table; echo evaluations are then O(N/2).
class LoschmidtEcho {
public:
    explicit LoschmidtEcho(const IsingParams& params) : params_(params) {
        params.validate();
        const auto bare = mode_spectrum(params, params.lambda_field);
        const auto dressed = mode_spectrum(params, params.perturbed_field());
        weights_.reserve(bare.size());
        energies_.reserve(bare.size());
        for (std::size_t i = 0; i < bare.size(); ++i) {
            const double s = std::sin(2.0 * (dressed[i].bogoliubov_angle - bare[i].bogoliubov_angle));
            weights_.push_back(s * s);
            energies_.push_back(dressed[i].energy);
        }
    }

    const IsingParams& params() const { return params_; }

    // ln L(t), accumulated factor by factor; -inf if a factor vanishes.
    double log_echo(double t) const {
        if (!(t >= 0.0) && !(t <= 0.0)) throw std::invalid_argument("loschmidt_echo: t is NaN");
        double acc = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            if (weights_[i] == 0.0) continue;
            const double sn = std::sin(energies_[i] * t);
            const double loss = std::clamp(weights_[i] * sn * sn, 0.0, 1.0);
            acc += std::log1p(-loss);
        }
        return acc;
    }

    double operator()(double t) const {
        if (!(t >= 0.0)) throw std::invalid_argument("loschmidt_echo: t must be >= 0");
        if (t == 0.0) return 1.0;
        return std::clamp(std::exp(log_echo(t)), 0.0, 1.0);
    }

    // gamma(t) = -L'/(4L) = -(d/dt ln L)/4 by central differences with
    // h = max(1e-4, 1e-4 t). L is even in t, so gamma(0) = 0.
    double decay_rate(double t) const {
        if (!(t >= 0.0)) throw std::invalid_argument("ising_decay_rate: t must be >= 0");
        if (t == 0.0) return 0.0;
        constexpr double floor = 1e-300;
        if (!(std::exp(log_echo(t)) > floor))
            throw DegenerateEcho("ising_decay_rate: Loschmidt echo below 1e-300 at t = " + std::to_string(t));
        const double h = std::max(1e-4, 1e-4 * t);
        // log_echo(-s) == log_echo(s)
        const double lo = log_echo(std::abs(t - h));
        const double hi = log_echo(t + h);
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw DegenerateEcho("ising_decay_rate: echo vanishes inside the difference stencil");
        return -0.25 * (hi - lo) / (2.0 * h);
    }

private:
    IsingParams params_;
    std::vector<double> weights_;
    std::vector<double> energies_;
};

inline double loschmidt_echo(const IsingParams& params, double t) { return LoschmidtEcho(params)(t); }

inline double ising_decay_rate(const IsingParams& params, double t) { return LoschmidtEcho(params).decay_rate(t); }

// Coherent information of the dephased singlet as a function of L, in bits:
// 1 + sum over (1 -/+ sqrt L)/2 of x log2 x.
inline double coherent_info_from_echo(double echo) {
    if (!(echo >= -1e-12 && echo <= 1.0 + 1e-12))
        throw std::invalid_argument("coherent_info_from_echo: L outside [0, 1]");
    const double r = std::sqrt(std::clamp(echo, 0.0, 1.0));
    return std::clamp(1.0 - entropy_term(0.5 * (1.0 - r)) - entropy_term(0.5 * (1.0 + r)), 0.0, 1.0);
}

inline double ising_coherent_info(const IsingParams& params, double t) {
    return coherent_info_from_echo(loschmidt_echo(params, t));
}

// The chain as a Pauli rate set: gamma_1 = gamma_2 = 0, gamma_3 = gamma(t),
// with the exact integral Gamma_3 = -ln L / 4, so exp(-2 Gamma_3) = sqrt L.
inline PauliRateSet ising_rates(const LoschmidtEcho& echo) {
    return PauliRateSet::dephasing(RateFunction::custom(
        [echo](double t) { return echo.decay_rate(t); },
        [echo](double t) { return t == 0.0 ? 0.0 : -0.25 * echo.log_echo(t); }));
}

// Dephasing snapshot with lambda_1 = lambda_2 = sqrt L(t), lambda_3 = 1.
inline PauliSnapshot ising_snapshot(const LoschmidtEcho& echo, double t) {
    return pauli_snapshot(ising_rates(echo), t);
}

} // namespace nmwork
