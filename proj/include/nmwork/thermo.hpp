// thermo.hpp: Entropic quantities and Landauer extractable work for one
// system qubit S correlated with one memory qubit Q.
//
// Work is dimensionless, in units of kT ln 2:
//   memory noise:  W_ex = n - H(S|Q_t) = n + I(S>Q_t)
//   system noise:  W_ex = n - H(S_t) + I(S_t:Q)
// Both are n - H(S|Q) of the joint state at time t.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "nmwork/channels.hpp"
#include "nmwork/errors.hpp"
#include "nmwork/linalg.hpp"

namespace nmwork {

inline constexpr double boltzmann_constant = 1.380649e-23; // J/K

// W_ex [J] for a value in kT ln 2 units at temperature `kelvin`.
inline double work_in_joules(double w_kTln2, double kelvin) {
    return w_kTln2 * boltzmann_constant * kelvin * std::log(2.0);
}

struct EntropicProfile {
    double H_S = 0.0;
    double H_Q = 0.0;
    double H_SQ = 0.0;
    double cond_entropy = 0.0; // H(S|Q) = H(SQ) - H(Q)
    double coherent_info = 0.0; // I(S>Q) = -H(S|Q)
    double mutual_info = 0.0;   // I(S:Q) = H(S) + H(Q) - H(SQ)
};

inline EntropicProfile entropic_profile(const TwoQubit& rho_sq) {
    EntropicProfile e;
    e.H_S = von_neumann_entropy(partial_trace(rho_sq, Party::system));
    e.H_Q = von_neumann_entropy(partial_trace(rho_sq, Party::memory));
    e.H_SQ = von_neumann_entropy(rho_sq);
    e.cond_entropy = e.H_SQ - e.H_Q;
    e.coherent_info = -e.cond_entropy;
    e.mutual_info = e.H_S + e.H_Q - e.H_SQ;
    return e;
}

namespace detail {
inline void require_single_qubit(int n) {
    if (n != 1) throw Unsupported("extractable work is implemented for n = 1 only");
}
} // namespace detail

inline double work_memory_scenario(const TwoQubit& rho_sq, int n = 1) {
    detail::require_single_qubit(n);
    return n + entropic_profile(rho_sq).coherent_info;
}

inline double work_system_scenario(const TwoQubit& rho_sq, int n = 1) {
    detail::require_single_qubit(n);
    const auto e = entropic_profile(rho_sq);
    return n - e.H_S + e.mutual_info;
}

// I(S>Q_t) = 1 + sum_a p_a log2 p_a for a Pauli channel acting on |psi->.
inline double pauli_coherent_info_analytic(const std::array<double, 4>& p) {
    double total = 0.0;
    for (double x : p) {
        if (x < -1e-10) throw std::invalid_argument("pauli_coherent_info_analytic: negative probability");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("pauli_coherent_info_analytic: probabilities do not sum to one");
    double h = 0.0;
    for (double x : p) h += entropy_term(std::max(x, 0.0));
    return std::clamp(1.0 - h, -1.0, 1.0);
}

struct WorkPoint {
    double t = 0.0;
    double H_S = 0.0;
    double H_Q = 0.0;
    double H_SQ = 0.0;
    double cond_entropy = 0.0;
    double coherent_info = 0.0;
    double mutual_info = 0.0;
    double w_ex = 0.0; // kT ln 2
    std::optional<DivisibilityFlags> flags;

    static WorkPoint from_profile(double t, const EntropicProfile& e, double w_ex) {
        return {t, e.H_S, e.H_Q, e.H_SQ, e.cond_entropy, e.coherent_info, e.mutual_info, w_ex, std::nullopt};
    }

    // Largest violation of the internal consistency relations and ranges;
    // zero for a well-formed point.
    double invariant_defect() const {
        double d = 0.0;
        d = std::max(d, std::abs(mutual_info - (H_S + H_Q - H_SQ)));
        d = std::max(d, std::abs(coherent_info + cond_entropy));
        auto outside = [](double v, double lo, double hi) { return std::max({0.0, lo - v, v - hi}); };
        d = std::max(d, outside(coherent_info, -1.0, 1.0));
        d = std::max(d, outside(mutual_info, 0.0, 2.0));
        d = std::max(d, outside(w_ex, 0.0, 2.0));
        if (!std::isfinite(H_S + H_Q + H_SQ + cond_entropy + coherent_info + mutual_info + w_ex))
            d = std::numeric_limits<double>::infinity();
        return d;
    }
};

struct WorkChange {
    double delta_w_ex = 0.0;       // W_ex(t2) - W_ex(t1)
    double minus_delta_H_S = 0.0;  // -[H(S_t2) - H(S_t1)]
    double delta_mutual = 0.0;     // I(S_t2:Q) - I(S_t1:Q)
};

inline WorkChange delta_work(const WorkPoint& w1, const WorkPoint& w2) {
    if (!(w2.t >= w1.t)) throw std::invalid_argument("delta_work: requires t2 >= t1");
    return {w2.w_ex - w1.w_ex, -(w2.H_S - w1.H_S), w2.mutual_info - w1.mutual_info};
}

} // namespace nmwork
