// verify.hpp: Property suite behind `nmwork verify`
//
// Each check samples a module's invariants and reports the largest deviation
// seen against its tolerance. Sampling uses fixed seeds, so reports are
// reproducible.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "nmwork/channels.hpp"
#include "nmwork/ising.hpp"
#include "nmwork/linalg.hpp"
#include "nmwork/pbg.hpp"
#include "nmwork/sampling.hpp"
#include "nmwork/scenario.hpp"
#include "nmwork/specfun.hpp"
#include "nmwork/thermo.hpp"

namespace nmwork {

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    // a_j = scale * v_j in the band-gap amplitude; 1 is the physical choice.
    double pbg_pole_weight_scale = 1.0;
};

namespace checks {

namespace detail {

inline CheckResult bounded(std::string module, std::string name, double deviation, double tol,
                           std::string detail = {}) {
    return {std::move(module), std::move(name), std::isfinite(deviation) && deviation <= tol, deviation, tol,
            std::move(detail)};
}

inline std::vector<double> grid(double t_max, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = i * t_max / (n - 1);
    return g;
}

inline std::array<PauliRateSet, 2> fig2_rates() {
    return {PauliRateSet::tan_scenario(0.1, 2.0), PauliRateSet::tanh_scenario(1.0, 0.5)};
}
inline constexpr std::array<double, 2> fig2_windows{5.0, 10.0};

} // namespace detail

// ---- linalg

inline CheckResult entropy_unitary_invariance() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto r2 = random_density_matrix<2>(rng);
        const auto u2 = random_unitary<2>(rng);
        worst = std::max(worst, std::abs(von_neumann_entropy(r2) -
                                         von_neumann_entropy(Qubit(u2 * r2.matrix() * u2.adjoint()))));
        const auto r4 = random_density_matrix<4>(rng);
        const auto u4 = random_unitary<4>(rng);
        worst = std::max(worst, std::abs(von_neumann_entropy(r4) -
                                         von_neumann_entropy(TwoQubit(u4 * r4.matrix() * u4.adjoint()))));
    }
    return detail::bounded("linalg", "entropy invariant under unitary conjugation", worst, 1e-9);
}

inline CheckResult partial_trace_of_product() {
    std::mt19937_64 rng(102);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto a = random_density_matrix<2>(rng);
        const auto b = random_density_matrix<2>(rng);
        const TwoQubit ab(tensor(a, b));
        worst = std::max(worst, max_abs_diff(partial_trace(ab, Party::system).matrix(), a.matrix()));
        worst = std::max(worst, max_abs_diff(partial_trace(ab, Party::memory).matrix(), b.matrix()));
    }
    return detail::bounded("linalg", "partial trace recovers tensor factors", worst, 1e-12);
}

inline CheckResult eigenvalue_trace_and_quadratic() {
    std::mt19937_64 rng(103);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto h4 = random_hermitian<4>(rng);
        const auto e4 = herm_eigvals(h4);
        worst = std::max(worst, std::abs(e4[0] + e4[1] + e4[2] + e4[3] - h4.trace().real()));
        const auto h2 = random_hermitian<2>(rng);
        const auto e2 = herm_eigvals(h2);
        const double a = h2(0, 0).real();
        const double d = h2(1, 1).real();
        const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h2(0, 1)));
        worst = std::max({worst, std::abs(e2[0] - (0.5 * (a + d) - disc)), std::abs(e2[1] - (0.5 * (a + d) + disc))});
    }
    return detail::bounded("linalg", "eigenvalues: trace sum and 2x2 closed form", worst, 1e-10);
}

// ---- specfun

inline CheckResult erf_symmetries() {
    std::mt19937_64 rng(201);
    std::uniform_real_distribution<double> radius(0.0, 8.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Complex z = std::polar(radius(rng), angle(rng));
        const Complex f = erf_complex(z);
        const double scale = std::max(std::abs(f), 1e-300);
        worst = std::max(worst, std::abs(erf_complex(-z) + f) / scale);
        worst = std::max(worst, std::abs(erf_complex(std::conj(z)) - std::conj(f)) / scale);
    }
    return detail::bounded("specfun", "erf odd and conjugate symmetry", worst, 1e-12);
}

inline CheckResult erf_real_axis() {
    double worst = 0.0;
    for (int i = 0; i <= 600; ++i) {
        const double x = 0.01 * i;
        const double ref = std::erf(x);
        const Complex f = erf_complex({x, 0.0});
        worst = std::max(worst, std::abs(f - ref) / std::max(std::abs(ref), 1e-300));
    }
    return detail::bounded("specfun", "erf matches real erf on [0, 6]", worst, 1e-12);
}

inline CheckResult erf_derivative() {
    std::mt19937_64 rng(203);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    constexpr double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Complex z{coord(rng), coord(rng)};
        const Complex fd = (erf_complex(z + h) - erf_complex(z - h)) / (2.0 * h);
        const Complex exact = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-z * z);
        worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
    }
    return detail::bounded("specfun", "erf derivative by central differences", worst, 1e-6);
}

// ---- channels

inline CheckResult fig2_probability_sum() {
    double worst = 0.0;
    const auto rates = detail::fig2_rates();
    for (std::size_t s = 0; s < 2; ++s)
        for (double t : detail::grid(detail::fig2_windows[s], 200)) {
            const auto snap = pauli_snapshot(rates[s], t);
            worst = std::max(worst, std::abs(snap.p[0] + snap.p[1] + snap.p[2] + snap.p[3] - 1.0));
        }
    return detail::bounded("channels", "fig2 channels: probabilities sum to one", worst, 1e-12);
}

inline CheckResult fig2_choi_positive() {
    double worst = 0.0;
    const auto rates = detail::fig2_rates();
    for (std::size_t s = 0; s < 2; ++s)
        for (double t : detail::grid(detail::fig2_windows[s], 200))
            worst = std::max(worst, -herm_eigvals(pauli_choi(pauli_snapshot(rates[s], t)))[0]);
    return detail::bounded("channels", "fig2 channels: Choi matrix positive semidefinite", std::max(worst, 0.0),
                           1e-10, "max of -(smallest Choi eigenvalue)");
}

inline CheckResult pauli_unitality() {
    std::mt19937_64 rng(302);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    const Qubit mixed = Qubit::maximally_mixed();
    for (int i = 0; i < 100; ++i) {
        std::array<double, 4> w{u(rng), u(rng), u(rng), u(rng)};
        const double s = w[0] + w[1] + w[2] + w[3];
        PauliSnapshot snap;
        for (std::size_t a = 0; a < 4; ++a) snap.p[a] = w[a] / s;
        worst = std::max(worst, max_abs_diff(apply_pauli(snap, mixed).matrix(), mixed.matrix()));
    }
    return detail::bounded("channels", "Pauli channels are unital", worst, 1e-12);
}

inline CheckResult closed_form_vs_quadrature() {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double omega = 0.2 + 2.8 * u(rng);
        RateFunction rate = RateFunction::constant(2.0 * u(rng));
        double t = 10.0 * u(rng);
        switch (i % 3) {
        case 0: break;
        case 1:
            rate = RateFunction::tan_rate(omega);
            t = 0.95 * u(rng) * 0.5 * std::numbers::pi / omega; // stay clear of the pole
            break;
        default: rate = RateFunction::tanh_rate(omega); break;
        }
        worst = std::max(worst, std::abs(rate.integral(t) - rate.integral_by_quadrature(t)));
    }
    return detail::bounded("channels", "rate integrals: closed form vs adaptive Simpson", worst, 1e-9);
}

inline CheckResult cp_implies_p() {
    int violations = 0;
    const auto rates = detail::fig2_rates();
    for (std::size_t s = 0; s < 2; ++s)
        for (double t : detail::grid(detail::fig2_windows[s], 200)) {
            const auto f = divisibility_flags(rates[s], t);
            if (f.cp_divisible && !f.p_divisible) ++violations;
        }
    return detail::bounded("channels", "CP-divisible implies P-divisible", violations, 0.0);
}

// ---- ising

inline IsingParams fig3_params(double field) { return {1.0, field, 0.1, 4000}; }

inline CheckResult echo_bounds() {
    double worst = 0.0;
    for (double field : {0.9, 0.0, 1.8}) {
        const LoschmidtEcho echo(fig3_params(field));
        worst = std::max(worst, std::abs(echo(0.0) - 1.0));
        for (double t : detail::grid(20.0, 400)) {
            const double l = echo(t);
            worst = std::max({worst, -l, l - 1.0});
        }
    }
    return detail::bounded("ising", "0 <= L(t) <= 1 and L(0) = 1", worst, 0.0);
}

inline CheckResult dephasing_as_pauli() {
    double worst = 0.0;
    for (double field : {0.9, 0.0, 1.8}) {
        const LoschmidtEcho echo(fig3_params(field));
        for (double t : detail::grid(20.0, 100)) {
            const auto snap = ising_snapshot(echo, t);
            const double root = std::sqrt(echo(t));
            worst = std::max({worst, std::abs(snap.lambda[0] - root), std::abs(snap.lambda[1] - root),
                              std::abs(snap.lambda[2] - 1.0)});
            worst = std::max(worst, std::abs(pauli_coherent_info_analytic(snap.p) - coherent_info_from_echo(echo(t))));
        }
    }
    return detail::bounded("ising", "dephasing equals Pauli channel with lambda_1,2 = sqrt(L)", worst, 1e-9);
}

inline CheckResult coherent_info_monotone_in_echo() {
    double worst = 0.0;
    double prev = coherent_info_from_echo(0.0);
    for (int i = 1; i <= 1000; ++i) {
        const double cur = coherent_info_from_echo(i / 1000.0);
        worst = std::max(worst, prev - cur);
        prev = cur;
    }
    return detail::bounded("ising", "coherent information non-decreasing in L", worst, 1e-12);
}

inline CheckResult echo_runtime() {
    const auto start = std::chrono::steady_clock::now();
    const LoschmidtEcho echo(fig3_params(0.9));
    double sink = 0.0;
    for (double t : detail::grid(20.0, 1000)) sink += echo(t);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return detail::bounded("ising", "1000 echo evaluations at N = 4000 under 1 s", secs, 1.0,
                           "seconds; checksum " + format_number(sink));
}

// ---- pbg

inline CheckResult pbg_normalization(const VerifyOptions& opt) {
    try {
        const PBGModel model(PBGParams{1.0, -1.0}, opt.pbg_pole_weight_scale);
        double worst = std::abs(model.G(0.0) - 1.0);
        double over = 0.0;
        for (double t : detail::grid(20.0, 1000)) over = std::max(over, std::abs(model.G(t)) - 1.0);
        return detail::bounded("pbg", "G(0) = 1 and |G| <= 1", std::max(worst, over), 1e-6);
    } catch (const ModelViolation& e) {
        return {"pbg", "G(0) = 1 and |G| <= 1", false, std::numeric_limits<double>::infinity(), 1e-6, e.what()};
    }
}

inline CheckResult pbg_entropy_oracle() {
    std::mt19937_64 rng(502);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double mag = u(rng);
        const Complex g = std::polar(mag, 2.0 * std::numbers::pi * u(rng));
        const auto kraus = amplitude_damping_kraus(g).operators();
        const auto e = entropic_profile(apply_to_subsystem(kraus, singlet(), Party::system));
        const auto a = pbg_entropies(mag);
        worst = std::max({worst, std::abs(e.H_S - a.H_S), std::abs(e.H_Q - a.H_Q), std::abs(e.H_SQ - a.H_SQ)});
    }
    return detail::bounded("pbg", "analytic entropies vs eigendecomposition", worst, 1e-9);
}

inline CheckResult pbg_phase_independence() {
    std::mt19937_64 rng(503);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double mag = u(rng);
        const auto k1 = amplitude_damping_kraus(mag).operators();
        const auto k2 = amplitude_damping_kraus(std::polar(mag, 2.0 * std::numbers::pi * u(rng))).operators();
        const auto e1 = entropic_profile(apply_to_subsystem(k1, singlet(), Party::system));
        const auto e2 = entropic_profile(apply_to_subsystem(k2, singlet(), Party::system));
        worst = std::max({worst, std::abs(e1.H_S - e2.H_S), std::abs(e1.H_Q - e2.H_Q), std::abs(e1.H_SQ - e2.H_SQ),
                          std::abs(e1.mutual_info - e2.mutual_info), std::abs(e1.coherent_info - e2.coherent_info)});
    }
    return detail::bounded("pbg", "entropies depend only on |G|", worst, 1e-12);
}

inline CheckResult pbg_work_formula() {
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double mag = i / 200.0;
        const auto a = pbg_entropies(mag);
        const double mutual = a.H_S + a.H_Q - a.H_SQ;
        const double w = 1.0 - a.H_S + mutual;
        const auto rho = apply_to_subsystem(amplitude_damping_kraus(mag).operators(), singlet(), Party::system);
        worst = std::max({worst, std::abs(work_system_scenario(rho) - w), std::max(0.0, -w), std::max(0.0, w - 2.0)});
    }
    return detail::bounded("pbg", "W_ex = 1 - H(S_t) + I(S_t:Q) within [0, 2]", worst, 1e-9);
}

inline CheckResult pbg_continuity() {
    const PBGModel model(PBGParams{1.0, -1.0});
    constexpr double h = 1e-4;
    // |G'| is bounded by a few units here; 10 h leaves a wide margin while
    // still catching a branch jump of O(1).
    double worst = 0.0;
    for (double t : detail::grid(20.0, 500)) worst = std::max(worst, std::abs(model.G(t + h) - model.G(t)) / h);
    return detail::bounded("pbg", "G(t) continuous (|dG| <= 10 h)", worst, 10.0, "max |G(t+h)-G(t)|/h");
}

// ---- thermo

inline CheckResult scenario_equivalence() {
    std::mt19937_64 rng(601);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto rho = random_density_matrix<4>(rng);
        worst = std::max(worst, std::abs(work_memory_scenario(rho) - work_system_scenario(rho)));
    }
    return detail::bounded("thermo", "memory and system work formulas agree", worst, 1e-12);
}

inline CheckResult data_processing_monotonicity() {
    const PauliRateSet rates{RateFunction::constant(0.3), RateFunction::constant(0.7), RateFunction::constant(0.2)};
    double worst = 0.0;
    double prev = 2.0;
    for (double t : detail::grid(10.0, 400)) {
        const auto snap = pauli_snapshot(rates, t);
        const auto rho = apply_to_subsystem(pauli_kraus(snap), singlet(), Party::memory);
        const double c = entropic_profile(rho).coherent_info;
        worst = std::max(worst, c - prev);
        prev = c;
    }
    return detail::bounded("thermo", "coherent information non-increasing under CP-divisible noise", worst, 1e-9);
}

inline CheckResult analytic_vs_oracle() {
    std::mt19937_64 rng(603);
    double worst = 0.0;
    const auto rates = detail::fig2_rates();
    for (std::size_t s = 0; s < 2; ++s) {
        std::uniform_real_distribution<double> u(0.0, detail::fig2_windows[s]);
        for (int i = 0; i < 100; ++i) {
            const auto snap = pauli_snapshot(rates[s], u(rng));
            const auto rho = apply_to_subsystem(pauli_kraus(snap), singlet(), Party::memory);
            worst = std::max(worst, std::abs(entropic_profile(rho).coherent_info - pauli_coherent_info_analytic(snap.p)));
        }
    }
    return detail::bounded("thermo", "analytic Pauli coherent information vs eigendecomposition", worst, 1e-9);
}

inline CheckResult unital_symmetry() {
    std::mt19937_64 rng(604);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        PauliSnapshot snap;
        std::array<double, 4> w{u(rng), u(rng), u(rng), u(rng)};
        const double s = w[0] + w[1] + w[2] + w[3];
        for (std::size_t a = 0; a < 4; ++a) snap.p[a] = w[a] / s;
        const auto kraus = pauli_kraus(snap);
        const auto es = entropic_profile(apply_to_subsystem(kraus, singlet(), Party::system));
        const auto eq = entropic_profile(apply_to_subsystem(kraus, singlet(), Party::memory));
        worst = std::max({worst, std::abs(es.H_S - eq.H_S), std::abs(es.H_Q - eq.H_Q), std::abs(es.H_SQ - eq.H_SQ),
                          std::abs(es.cond_entropy - eq.cond_entropy), std::abs(es.coherent_info - eq.coherent_info),
                          std::abs(es.mutual_info - eq.mutual_info)});
    }
    return detail::bounded("thermo", "Pauli noise on S or on Q gives identical entropies", worst, 1e-9);
}

// ---- runner

inline CheckResult tanh_work_monotone() {
    const auto r = run_scenario(preset("fig2b"));
    double worst = 0.0;
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        for (std::size_t j = i + 1; j < r.rows.size(); ++j)
            worst = std::max(worst, delta_work(r.rows[i], r.rows[j]).delta_w_ex);
    return detail::bounded("cli", "fig2b: no increase of W_ex over any ordered pair", worst, 1e-9);
}

inline CheckResult runner_determinism() {
    int mismatches = 0;
    for (const auto& name : preset_names()) {
        ScenarioConfig c = preset(name);
        c.steps = 200;
        const std::string serial = csv_string(run_scenario(c));
        if (serial != csv_string(run_scenario(c))) ++mismatches;
        c.workers = 4;
        if (serial != csv_string(run_scenario(c))) ++mismatches;
    }
    return detail::bounded("cli", "repeat and parallel runs give byte-identical CSV", mismatches, 0.0);
}

} // namespace checks

inline std::vector<CheckResult> verify(const VerifyOptions& opt = {}) {
    std::vector<std::function<CheckResult()>> suite{
        checks::entropy_unitary_invariance,
        checks::partial_trace_of_product,
        checks::eigenvalue_trace_and_quadratic,
        checks::erf_symmetries,
        checks::erf_real_axis,
        checks::erf_derivative,
        checks::fig2_probability_sum,
        checks::fig2_choi_positive,
        checks::pauli_unitality,
        checks::closed_form_vs_quadrature,
        checks::cp_implies_p,
        checks::echo_bounds,
        checks::dephasing_as_pauli,
        checks::coherent_info_monotone_in_echo,
        checks::echo_runtime,
        [&opt] { return checks::pbg_normalization(opt); },
        checks::pbg_entropy_oracle,
        checks::pbg_phase_independence,
        checks::pbg_work_formula,
        checks::pbg_continuity,
        checks::scenario_equivalence,
        checks::data_processing_monotonicity,
        checks::analytic_vs_oracle,
        checks::unital_symmetry,
        checks::tanh_work_monotone,
        checks::runner_determinism,
    };
    std::vector<CheckResult> out;
    out.reserve(suite.size());
    for (const auto& check : suite) {
        try {
            out.push_back(check());
        } catch (const std::exception& e) {
            out.push_back({"?", "check raised", false, std::numeric_limits<double>::infinity(), 0.0, e.what()});
        }
    }
    return out;
}

inline nlohmann::json verify_report(const std::vector<CheckResult>& results) {
    nlohmann::json items = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        nlohmann::json j{{"module", r.module},
                         {"property", r.name},
                         {"status", r.passed ? "pass" : "fail"},
                         {"tolerance", r.tolerance}};
        j["max_deviation"] = std::isfinite(r.max_deviation) ? nlohmann::json(r.max_deviation) : nlohmann::json("inf");
        if (!r.detail.empty()) j["detail"] = r.detail;
        items.push_back(j);
    }
    return {{"artifact", "nmwork"}, {"version", std::string(version)}, {"passed", all}, {"checks", items}};
}

} // namespace nmwork
