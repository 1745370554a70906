// channels.hpp: Time-dependent qubit channels: Pauli channels built from
// decoherence rates, amplitude damping from a complex amplitude G, Kraus
// application on one party of a two-qubit state, Choi matrices and
// divisibility witnesses.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nmwork/errors.hpp"
#include "nmwork/linalg.hpp"
#include "nmwork/quadrature.hpp"

namespace nmwork {

enum class RateKind { constant, tan_rate, tanh_rate, tabulated, custom };

inline const char* to_string(RateKind k) {
    switch (k) {
    case RateKind::constant: return "constant";
    case RateKind::tan_rate: return "tan";
    case RateKind::tanh_rate: return "tanh";
    case RateKind::tabulated: return "tabulated";
    case RateKind::custom: return "custom";
    }
    return "?";
}

// A decoherence rate gamma(t) together with its integral Gamma(t) and the
// attenuation factor exp(-2 Gamma(t)) that enters the Pauli eigenvalues.
//
//   constant(l):  gamma = l/2                 Gamma = l t / 2
//   tan_rate(w):  gamma = (w/2) tan(w t)      Gamma = -1/2 ln cos(w t)
//   tanh_rate(w): gamma = -(w/2) tanh(w t)    Gamma = -1/2 ln cosh(w t)
//
// For tan_rate the attenuation is cos(w t) itself, which stays finite and
// changes sign where the rate diverges.
class RateFunction {
public:
    static RateFunction constant(double lambda) {
        if (!std::isfinite(lambda)) throw std::invalid_argument("constant rate: lambda must be finite");
        RateFunction r(RateKind::constant);
        r.lambda_ = lambda;
        return r;
    }

    static RateFunction tan_rate(double omega, bool closed_form = true) {
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw std::invalid_argument("tan rate: omega must be positive");
        RateFunction r(RateKind::tan_rate);
        r.omega_ = omega;
        r.closed_form_ = closed_form;
        return r;
    }

    static RateFunction tanh_rate(double omega, bool closed_form = true) {
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw std::invalid_argument("tanh rate: omega must be positive");
        RateFunction r(RateKind::tanh_rate);
        r.omega_ = omega;
        r.closed_form_ = closed_form;
        return r;
    }

    // Piecewise-linear rate through (times[i], rates[i]); times strictly
    // increasing starting at 0. Constant extrapolation past the last knot.
    static RateFunction tabulated(std::vector<double> times, std::vector<double> rates) {
        if (times.size() < 2 || times.size() != rates.size())
            throw std::invalid_argument("tabulated rate: need >= 2 matching knots");
        if (times.front() != 0.0) throw std::invalid_argument("tabulated rate: first knot must be t = 0");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::invalid_argument("tabulated rate: knots must increase");
        RateFunction r(RateKind::tabulated);
        r.table_ = std::make_shared<const Table>(Table{std::move(times), std::move(rates)});
        r.closed_form_ = true; // trapezoid sum is exact for a piecewise-linear rate
        return r;
    }

    // Arbitrary rate; `integral` (Gamma) is optional and otherwise obtained
    // by adaptive quadrature.
    static RateFunction custom(std::function<double(double)> rate,
                               std::function<double(double)> integral = {}) {
        if (!rate) throw std::invalid_argument("custom rate: empty callable");
        RateFunction r(RateKind::custom);
        r.rate_ = std::move(rate);
        r.closed_form_ = static_cast<bool>(integral);
        r.integral_ = std::move(integral);
        return r;
    }

    RateKind kind() const { return kind_; }
    bool closed_form_integral_available() const { return closed_form_; }
    double lambda() const { return lambda_; }
    double omega() const { return omega_; }

    double operator()(double t) const {
        double g = 0.0;
        switch (kind_) {
        case RateKind::constant: g = 0.5 * lambda_; break;
        case RateKind::tan_rate: {
            const double c = std::cos(omega_ * t);
            if (std::abs(c) < singular_cos)
                throw SingularityError("tan rate diverges at omega t = pi/2 (mod pi)");
            g = 0.5 * omega_ * std::sin(omega_ * t) / c;
            break;
        }
        case RateKind::tanh_rate: g = -0.5 * omega_ * std::tanh(omega_ * t); break;
        case RateKind::tabulated: g = table_->at(t); break;
        case RateKind::custom: g = rate_(t); break;
        }
        if (!std::isfinite(g)) throw SingularityError("rate is not finite at t = " + std::to_string(t));
        return g;
    }

    // Gamma(t) = int_0^t gamma.
    double integral(double t) const {
        if (!(t >= 0.0)) throw std::invalid_argument("rate integral: t must be >= 0");
        if (!closed_form_) return integral_by_quadrature(t);
        switch (kind_) {
        case RateKind::constant: return 0.5 * lambda_ * t;
        case RateKind::tan_rate: {
            const double c = std::cos(omega_ * t);
            if (std::abs(c) < singular_cos)
                throw SingularityError("tan rate integral diverges at omega t = pi/2 (mod pi)");
            return -0.5 * std::log(std::abs(c));
        }
        case RateKind::tanh_rate: return -0.5 * log_cosh(omega_ * t);
        case RateKind::tabulated: return table_->integral(t);
        case RateKind::custom: return integral_(t);
        }
        return 0.0;
    }

    // Adaptive Simpson, absolute tolerance 1e-10, regardless of closed forms.
    double integral_by_quadrature(double t) const {
        if (!(t >= 0.0)) throw std::invalid_argument("rate integral: t must be >= 0");
        if (kind_ == RateKind::tan_rate && omega_ * t >= 0.5 * std::numbers::pi)
            throw SingularityError("tan rate cannot be integrated through omega t = pi/2");
        if (kind_ == RateKind::tabulated) {
            // Integrate knot to knot so the kinks sit on panel boundaries.
            double sum = 0.0;
            double lo = 0.0;
            for (double knot : table_->times) {
                if (knot <= lo) continue;
                const double hi = std::min(knot, t);
                sum += adaptive_simpson([this](double s) { return (*this)(s); }, lo, hi, 1e-10);
                lo = hi;
                if (lo >= t) break;
            }
            if (lo < t) sum += adaptive_simpson([this](double s) { return (*this)(s); }, lo, t, 1e-10);
            return sum;
        }
        return adaptive_simpson([this](double s) { return (*this)(s); }, 0.0, t, 1e-10);
    }

    // exp(-2 Gamma(t)), continued through the tan singularity as cos(w t).
    double attenuation(double t) const {
        if (!(t >= 0.0)) throw std::invalid_argument("rate attenuation: t must be >= 0");
        if (closed_form_) {
            switch (kind_) {
            case RateKind::constant: return std::exp(-lambda_ * t);
            case RateKind::tan_rate: return std::cos(omega_ * t);
            case RateKind::tanh_rate: return std::cosh(omega_ * t);
            default: break;
            }
        }
        return std::exp(-2.0 * integral(t));
    }

private:
    struct Table {
        std::vector<double> times;
        std::vector<double> rates;

        double at(double t) const {
            if (t <= times.front()) return rates.front();
            if (t >= times.back()) return rates.back();
            const auto it = std::upper_bound(times.begin(), times.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
            const double w = (t - times[i]) / (times[i + 1] - times[i]);
            return rates[i] + w * (rates[i + 1] - rates[i]);
        }

        double integral(double t) const {
            double sum = 0.0;
            for (std::size_t i = 0; i + 1 < times.size() && times[i] < t; ++i) {
                const double hi = std::min(times[i + 1], t);
                sum += 0.5 * (hi - times[i]) * (rates[i] + at(hi));
            }
            if (t > times.back()) sum += (t - times.back()) * rates.back();
            return sum;
        }
    };

    static constexpr double singular_cos = 1e-15;

    static double log_cosh(double x) {
        const double a = std::abs(x);
        return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
    }

    explicit RateFunction(RateKind k) : kind_(k) {}

    RateKind kind_;
    double lambda_ = 0.0;
    double omega_ = 0.0;
    bool closed_form_ = true;
    std::shared_ptr<const Table> table_;
    std::function<double(double)> rate_;
    std::function<double(double)> integral_;
};

inline double gamma_integral(const RateFunction& rate, double t) { return rate.integral(t); }

struct PauliRateSet {
    RateFunction g1;
    RateFunction g2;
    RateFunction g3;

    const RateFunction& operator[](std::size_t k) const {
        switch (k) {
        case 0: return g1;
        case 1: return g2;
        default: return g3;
        }
    }

    // gamma_1 = gamma_2 = lambda/2, gamma_3 = (omega/2) tan(omega t)
    static PauliRateSet tan_scenario(double lambda, double omega) {
        return {RateFunction::constant(lambda), RateFunction::constant(lambda), RateFunction::tan_rate(omega)};
    }
    // gamma_1 = gamma_2 = lambda/2, gamma_3 = -(omega/2) tanh(omega t)
    static PauliRateSet tanh_scenario(double lambda, double omega) {
        return {RateFunction::constant(lambda), RateFunction::constant(lambda), RateFunction::tanh_rate(omega)};
    }
    // Pure dephasing: gamma_1 = gamma_2 = 0, gamma_3 = rate.
    static PauliRateSet dephasing(RateFunction rate) {
        return {RateFunction::constant(0.0), RateFunction::constant(0.0), std::move(rate)};
    }
};

inline constexpr double cp_violation_tolerance = 1e-10;
inline constexpr double rate_sign_tolerance = 1e-12;

// Pauli channel Phi_t(rho) = sum_a p_a sigma_a rho sigma_a at one time.
struct PauliSnapshot {
    double t = 0.0;
    std::array<double, 3> Gamma{};  // +inf where the attenuation vanishes
    std::array<double, 3> lambda{1.0, 1.0, 1.0};
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

    // Probabilities from the Bloch-ball contraction factors lambda_k.
    static PauliSnapshot from_eigenvalues(double t, const std::array<double, 3>& lambda) {
        PauliSnapshot s;
        s.t = t;
        s.lambda = lambda;
        const auto [l1, l2, l3] = lambda;
        s.p = {0.25 * (1.0 + l1 + l2 + l3), 0.25 * (1.0 + l1 - l2 - l3), 0.25 * (1.0 - l1 + l2 - l3),
               0.25 * (1.0 - l1 - l2 + l3)};
        // Invert lambda_k = exp(-2[Gamma_i + Gamma_j]) up to the sign of lambda.
        if (std::all_of(lambda.begin(), lambda.end(), [](double l) { return l != 0.0; })) {
            double total = 0.0;
            for (double l : lambda) total -= 0.25 * std::log(std::abs(l));
            for (std::size_t k = 0; k < 3; ++k) s.Gamma[k] = total + 0.5 * std::log(std::abs(lambda[k]));
        } else {
            s.Gamma.fill(std::numeric_limits<double>::infinity());
        }
        return s;
    }

    bool cp_violation() const {
        return std::any_of(p.begin(), p.end(), [](double x) { return x < -cp_violation_tolerance; });
    }
};

// Gamma -> lambda_k = exp(-2[Gamma_i + Gamma_j]) -> p_alpha.
inline PauliSnapshot pauli_snapshot(const PauliRateSet& rates, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("pauli_snapshot: t must be >= 0");
    std::array<double, 3> att{};
    for (std::size_t k = 0; k < 3; ++k) att[k] = rates[k].attenuation(t);
    PauliSnapshot s = PauliSnapshot::from_eigenvalues(t, {att[1] * att[2], att[0] * att[2], att[0] * att[1]});
    for (std::size_t k = 0; k < 3; ++k)
        s.Gamma[k] = att[k] == 0.0 ? std::numeric_limits<double>::infinity() : -0.5 * std::log(std::abs(att[k]));
    return s;
}

inline Qubit apply_pauli(const PauliSnapshot& snap, const Qubit& rho) {
    const auto sigma = pauli::all();
    Mat2 out;
    for (std::size_t a = 0; a < 4; ++a) out += Complex{snap.p[a]} * (sigma[a] * rho.matrix() * sigma[a]);
    return Qubit(out, rho.tolerance());
}

// {sqrt(p_a) sigma_a}. Throws ModelViolation if any p_a < -1e-10.
inline std::vector<Mat2> pauli_kraus(const PauliSnapshot& snap) {
    if (snap.cp_violation())
        throw ModelViolation("Pauli channel is not completely positive at t = " + std::to_string(snap.t));
    const auto sigma = pauli::all();
    std::vector<Mat2> ops;
    ops.reserve(4);
    for (std::size_t a = 0; a < 4; ++a) ops.push_back(Complex{std::sqrt(std::max(snap.p[a], 0.0))} * sigma[a]);
    return ops;
}

// Choi matrix (Phi_t (x) id)|Omega><Omega|, |Omega> = (|00> + |11>)/sqrt(2).
inline Mat4 pauli_choi(const PauliSnapshot& snap) {
    const double h = 1.0 / std::sqrt(2.0);
    const Mat4 omega = Mat4::projector({h, 0.0, 0.0, h});
    const auto sigma = pauli::all();
    Mat4 choi;
    for (std::size_t a = 0; a < 4; ++a) {
        const Mat4 k = tensor(sigma[a], pauli::id());
        choi += Complex{snap.p[a]} * (k * omega * k.adjoint());
    }
    return choi;
}

struct KrausPair {
    Mat2 k1;
    Mat2 k2;
    Complex g;

    std::array<Mat2, 2> operators() const { return {k1, k2}; }
};

// K1 = [[1, 0], [0, g]], K2 = [[0, sqrt(1 - |g|^2)], [0, 0]].
inline KrausPair amplitude_damping_kraus(Complex g) {
    const double mag = std::abs(g);
    if (!std::isfinite(mag) || mag > 1.0 + 1e-12)
        throw std::invalid_argument("amplitude_damping_kraus: |g| must not exceed 1");
    KrausPair k;
    k.g = g;
    k.k1 = Mat2{1.0, 0.0, 0.0, g};
    k.k2 = Mat2{0.0, std::sqrt(std::max(0.0, 1.0 - mag * mag)), 0.0, 0.0};
    return k;
}

// max |sum K^dagger K - I|
inline double kraus_completeness_defect(std::span<const Mat2> kraus) {
    Mat2 sum;
    for (const auto& k : kraus) sum += k.adjoint() * k;
    return max_abs_diff(sum, Mat2::identity());
}

// sum_i (K_i (x) I) rho (K_i (x) I)^dagger on the system, (I (x) K_i) on the memory.
inline TwoQubit apply_to_subsystem(std::span<const Mat2> kraus, const TwoQubit& rho, Party target) {
    if (kraus.empty()) throw std::invalid_argument("apply_to_subsystem: no Kraus operators");
    if (kraus_completeness_defect(kraus) > 1e-10)
        throw std::invalid_argument("apply_to_subsystem: Kraus operators are not trace preserving");
    Mat4 out;
    for (const auto& k : kraus) {
        const Mat4 big = target == Party::system ? tensor(k, pauli::id()) : tensor(pauli::id(), k);
        out += big * rho.matrix() * big.adjoint();
    }
    return TwoQubit(out, rho.tolerance());
}

struct DivisibilityFlags {
    bool cp_divisible = true;
    bool p_divisible = true;
    bool cp_violation = false;
};

// From the instantaneous rates: all gamma_k >= 0 (CP-divisible), all pairwise
// sums >= 0 (P-divisible); plus whether the map itself has left the CP set.
inline DivisibilityFlags divisibility_flags(const PauliRateSet& rates, double t) {
    const std::array<double, 3> g{rates.g1(t), rates.g2(t), rates.g3(t)};
    DivisibilityFlags f;
    f.cp_divisible = std::all_of(g.begin(), g.end(), [](double x) { return x >= -rate_sign_tolerance; });
    const bool pairwise = g[0] + g[1] >= -rate_sign_tolerance && g[0] + g[2] >= -rate_sign_tolerance &&
                          g[1] + g[2] >= -rate_sign_tolerance;
    f.p_divisible = f.cp_divisible || pairwise;
    f.cp_violation = pauli_snapshot(rates, t).cp_violation();
    return f;
}

} // namespace nmwork
