// scenario.hpp: Time-series runner behind the `nmwork run` command: scenario
// configuration and presets, per-time evaluation, CSV and manifest output.

#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "nmwork/channels.hpp"
#include "nmwork/errors.hpp"
#include "nmwork/ising.hpp"
#include "nmwork/linalg.hpp"
#include "nmwork/pbg.hpp"
#include "nmwork/thermo.hpp"

namespace nmwork {

inline constexpr std::string_view version = "1.0.0";

enum class Model { pauli, ising, pbg };
enum class Rate3 { tan, tanh };

inline const char* to_string(Model m) {
    switch (m) {
    case Model::pauli: return "pauli";
    case Model::ising: return "ising";
    case Model::pbg: return "pbg";
    }
    return "?";
}
inline const char* to_string(Rate3 r) { return r == Rate3::tan ? "tan" : "tanh"; }

// Thrown for output-file problems (exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    Model model = Model::pauli;
    std::string preset;

    // pauli: gamma_1 = gamma_2 = lambda/2, gamma_3 tan or tanh with omega
    double lambda = 0.1;
    double omega = 2.0;
    Rate3 rate3 = Rate3::tan;

    IsingParams ising{};
    PBGParams pbg{};

    double t_max = 5.0;
    int steps = 500;
    Party scenario = Party::memory;
    std::optional<double> temperature; // kelvin
    std::string output_path;

    unsigned workers = 1;
    // a_j = scale * v_j; anything but 1 is a fault-injection hook.
    double pbg_pole_weight_scale = 1.0;

    void validate() const {
        if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be positive");
        if (steps < 2) throw std::invalid_argument("steps must be >= 2");
        if (temperature && (!(*temperature > 0.0) || !std::isfinite(*temperature)))
            throw std::invalid_argument("temperature must be positive");
        if (workers == 0) throw std::invalid_argument("workers must be >= 1");
        switch (model) {
        case Model::pauli:
            if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be >= 0");
            if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be positive");
            break;
        case Model::ising: ising.validate(); break;
        case Model::pbg: pbg.validate(); break;
        }
    }

    // t_i = i t_max / (steps - 1)
    double time_at(int i) const { return i * t_max / (steps - 1); }
};

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig4"};
    return names;
}

inline ScenarioConfig preset(std::string_view name) {
    ScenarioConfig c;
    c.preset = std::string(name);
    if (name == "fig2a") {
        c.model = Model::pauli;
        c.lambda = 0.1;
        c.omega = 2.0;
        c.rate3 = Rate3::tan;
        c.t_max = 5.0;
        c.steps = 500;
    } else if (name == "fig2b") {
        c.model = Model::pauli;
        c.lambda = 1.0;
        c.omega = 0.5;
        c.rate3 = Rate3::tanh;
        c.t_max = 10.0;
        c.steps = 500;
    } else if (name == "fig3a" || name == "fig3b" || name == "fig3c") {
        c.model = Model::ising;
        c.ising = {1.0, name == "fig3a" ? 0.9 : name == "fig3b" ? 0.0 : 1.8, 0.1, 4000};
        c.t_max = 20.0;
        c.steps = 1000;
    } else if (name == "fig4") {
        c.model = Model::pbg;
        c.pbg = {1.0, -1.0};
        c.scenario = Party::system;
        c.t_max = 20.0;
        c.steps = 1000;
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
    }
    return c;
}

struct ScenarioResult {
    ScenarioConfig config;
    std::vector<WorkPoint> rows;
    std::vector<double> g_abs; // pbg only
    double wall_seconds = 0.0;
};

namespace detail {

// Evaluates one time sample of a configured model.
class PointEvaluator {
public:
    explicit PointEvaluator(const ScenarioConfig& cfg) : cfg_(cfg), initial_(singlet()) {
        switch (cfg.model) {
        case Model::pauli:
            rates_ = cfg.rate3 == Rate3::tan ? PauliRateSet::tan_scenario(cfg.lambda, cfg.omega)
                                             : PauliRateSet::tanh_scenario(cfg.lambda, cfg.omega);
            break;
        case Model::ising:
            echo_.emplace(cfg.ising);
            rates_ = ising_rates(*echo_);
            break;
        case Model::pbg: pbg_.emplace(cfg.pbg, cfg.pbg_pole_weight_scale); break;
        }
    }

    WorkPoint evaluate(double t, double* g_abs) const {
        std::optional<DivisibilityFlags> flags;
        TwoQubit rho = initial_;
        if (cfg_.model == Model::pbg) {
            const Complex g = pbg_->G(t);
            if (g_abs) *g_abs = std::abs(g);
            const auto kraus = amplitude_damping_kraus(g).operators();
            rho = apply_to_subsystem(kraus, initial_, cfg_.scenario);
        } else {
            const PauliSnapshot snap = pauli_snapshot(*rates_, t);
            const auto kraus = pauli_kraus(snap); // ModelViolation on CP failure
            rho = apply_to_subsystem(kraus, initial_, cfg_.scenario);
            try {
                flags = divisibility_flags(*rates_, t);
            } catch (const DegenerateEcho&) {
                // gamma(t) undefined once the echo underflows; leave the columns empty
            }
        }
        const auto profile = entropic_profile(rho);
        const double w = cfg_.scenario == Party::memory ? work_memory_scenario(rho) : work_system_scenario(rho);
        WorkPoint p = WorkPoint::from_profile(t, profile, w);
        p.flags = flags;
        if (p.invariant_defect() > 1e-9)
            throw ModelViolation("work point invariants violated at t = " + std::to_string(t));
        return p;
    }

    const std::optional<LoschmidtEcho>& echo() const { return echo_; }
    const std::optional<PBGModel>& pbg() const { return pbg_; }

private:
    ScenarioConfig cfg_;
    TwoQubit initial_;
    std::optional<PauliRateSet> rates_;
    std::optional<LoschmidtEcho> echo_;
    std::optional<PBGModel> pbg_;
};

} // namespace detail

// Evaluates the full time grid; with cfg.workers > 1 the grid is split into
// contiguous blocks evaluated concurrently. Rows come back in time order and
// are identical to a serial run.
inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const detail::PointEvaluator eval(cfg);

    ScenarioResult result;
    result.config = cfg;
    const auto n = static_cast<std::size_t>(cfg.steps);
    result.rows.resize(n);
    if (cfg.model == Model::pbg) result.g_abs.resize(n);

    auto run_block = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double* g = cfg.model == Model::pbg ? &result.g_abs[i] : nullptr;
            result.rows[i] = eval.evaluate(cfg.time_at(static_cast<int>(i)), g);
        }
    };

    const std::size_t workers = std::min<std::size_t>(cfg.workers, n);
    if (workers <= 1) {
        run_block(0, n);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        run_block(w * n / workers, (w + 1) * n / workers);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        // Earliest block first, matching what a serial run would report.
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

// ---------------------------------------------------------------------------
// Output

// Shortest representation that round-trips, '.' separator, locale free.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string csv_header(const ScenarioConfig& cfg) {
    std::string h = "t,H_S,H_Q,H_SQ,cond_entropy,coherent_info,mutual_info,w_ex_kTln2,cp_divisible,p_divisible";
    if (cfg.model == Model::pbg) h += ",g_abs";
    if (cfg.temperature) h += ",w_ex_J";
    return h;
}

inline void write_csv(std::ostream& os, const ScenarioResult& r) {
    os << csv_header(r.config) << '\n';
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const WorkPoint& p = r.rows[i];
        os << format_number(p.t) << ',' << format_number(p.H_S) << ',' << format_number(p.H_Q) << ','
           << format_number(p.H_SQ) << ',' << format_number(p.cond_entropy) << ',' << format_number(p.coherent_info)
           << ',' << format_number(p.mutual_info) << ',' << format_number(p.w_ex) << ',';
        if (p.flags) os << (p.flags->cp_divisible ? '1' : '0') << ',' << (p.flags->p_divisible ? '1' : '0');
        else os << ',';
        if (r.config.model == Model::pbg) os << ',' << format_number(r.g_abs[i]);
        if (r.config.temperature) os << ',' << format_number(work_in_joules(p.w_ex, *r.config.temperature));
        os << '\n';
    }
}

inline std::string csv_string(const ScenarioResult& r) {
    std::ostringstream os;
    write_csv(os, r);
    return os.str();
}

struct Interval {
    double start;
    double end;
};

// Maximal runs of consecutive samples on which both H_S and w_ex grow with
// finite-difference slope above `min_slope`.
inline std::vector<Interval> joint_rise_intervals(const std::vector<WorkPoint>& rows, double min_slope = 1e-4) {
    std::vector<Interval> out;
    bool open = false;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double dt = rows[i + 1].t - rows[i].t;
        const bool rising = dt > 0.0 && (rows[i + 1].H_S - rows[i].H_S) / dt > min_slope &&
                            (rows[i + 1].w_ex - rows[i].w_ex) / dt > min_slope;
        if (rising && open) {
            out.back().end = rows[i + 1].t;
        } else if (rising) {
            out.push_back({rows[i].t, rows[i + 1].t});
        }
        open = rising;
    }
    return out;
}

inline nlohmann::json config_json(const ScenarioConfig& c) {
    nlohmann::json j;
    j["model"] = to_string(c.model);
    if (!c.preset.empty()) j["preset"] = c.preset;
    j["t_max"] = c.t_max;
    j["steps"] = c.steps;
    j["scenario"] = to_string(c.scenario);
    j["temperature_K"] = c.temperature ? nlohmann::json(*c.temperature) : nlohmann::json(nullptr);
    j["output_path"] = c.output_path;
    j["workers"] = c.workers;
    switch (c.model) {
    case Model::pauli:
        j["parameters"] = {{"lambda", c.lambda}, {"omega", c.omega}, {"rate3", to_string(c.rate3)}};
        break;
    case Model::ising:
        j["parameters"] = {{"field", c.ising.lambda_field},
                           {"coupling", c.ising.delta},
                           {"exchange", c.ising.J},
                           {"spins", c.ising.N}};
        break;
    case Model::pbg:
        j["parameters"] = {{"detuning", c.pbg.detuning}, {"beta", c.pbg.beta}};
        if (c.pbg_pole_weight_scale != 1.0) j["parameters"]["pole_weight_scale"] = c.pbg_pole_weight_scale;
        break;
    }
    return j;
}

inline nlohmann::json manifest_json(const ScenarioResult& r) {
    const ScenarioConfig& c = r.config;
    nlohmann::json derived = nlohmann::json::object();
    switch (c.model) {
    case Model::pauli: {
        // Time windows where the map is not P-divisible.
        nlohmann::json windows = nlohmann::json::array();
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const auto& f = r.rows[i].flags;
            const bool bad = f && !f->p_divisible;
            const bool prev_bad = i > 0 && r.rows[i - 1].flags && !r.rows[i - 1].flags->p_divisible;
            if (bad && !prev_bad) windows.push_back({r.rows[i].t, r.rows[i].t});
            else if (bad) windows.back()[1] = r.rows[i].t;
        }
        derived["p_nondivisible_windows"] = windows;
        break;
    }
    case Model::ising:
        derived["lambda_star"] = c.ising.perturbed_field();
        break;
    case Model::pbg: {
        const auto coeffs = pbg_coefficients(c.pbg);
        auto cjson = [](Complex z) { return nlohmann::json::array({z.real(), z.imag()}); };
        derived["A_plus"] = cjson(coeffs.A_plus);
        derived["A_minus"] = cjson(coeffs.A_minus);
        for (std::size_t j = 0; j < 3; ++j) {
            derived["x"].push_back(cjson(coeffs.x[j]));
            derived["v"].push_back(cjson(coeffs.v[j]));
            derived["y"].push_back(cjson(coeffs.y[j]));
        }
        nlohmann::json rises = nlohmann::json::array();
        for (const auto& iv : joint_rise_intervals(r.rows)) rises.push_back({iv.start, iv.end});
        derived["entropy_and_work_rising_intervals"] = rises;
        break;
    }
    }

    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);

    return {{"artifact", "nmwork"},
            {"version", std::string(version)},
            {"config", config_json(c)},
            {"derived", derived},
            {"rows", r.rows.size()},
            {"columns", csv_header(c)},
            {"generated_at", stamp},
            {"wall_clock_seconds", r.wall_seconds}};
}

inline std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

// Writes <out> and <out>.manifest.json. Throws IoError on failure.
inline void write_outputs(const ScenarioResult& r) {
    const std::string& out = r.config.output_path;
    if (out.empty()) throw IoError("no output path");
    {
        std::ofstream f(out, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + out + "' for writing");
        write_csv(f, r);
        if (!f.flush()) throw IoError("write to '" + out + "' failed");
    }
    std::ofstream m(manifest_path(out), std::ios::binary | std::ios::trunc);
    if (!m) throw IoError("cannot open '" + manifest_path(out) + "' for writing");
    m << manifest_json(r).dump(2) << '\n';
    if (!m.flush()) throw IoError("write to '" + manifest_path(out) + "' failed");
}

} // namespace nmwork
