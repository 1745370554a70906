// nmwork: command-line front end
//
//   nmwork run --preset <fig2a|fig2b|fig3a|fig3b|fig3c|fig4> --out <path>
//   nmwork run --model <pauli|ising|pbg> [model flags] --t-max <f> --steps <n>
//              --scenario <system|memory> --out <path>
//   nmwork verify [--report <path>]
//
// Exit codes: 0 ok, 1 invalid parameters, 2 model violation / failed
// verification, 3 I/O failure.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "nmwork/scenario.hpp"
#include "nmwork/verify.hpp"

namespace {

constexpr int exit_invalid = 1;
constexpr int exit_model = 2;
constexpr int exit_io = 3;

struct RunFlags {
    std::string preset;
    std::string model;
    std::string scenario;
    std::string rate3;
    std::string out;
    double lambda = 0, omega = 0, field = 0, coupling = 0, exchange = 0, detuning = 0, beta = 0, t_max = 0,
           temperature = 0, pole_scale = 1.0;
    int spins = 0, steps = 0;
    unsigned workers = 1;
};

nmwork::ScenarioConfig build_config(const CLI::App& run, const RunFlags& f) {
    using namespace nmwork;
    auto given = [&run](const char* name) { return run.count(name) > 0; };

    ScenarioConfig c;
    if (!f.preset.empty()) {
        c = preset(f.preset);
    } else {
        if (f.model.empty()) throw std::invalid_argument("either --preset or --model is required");
        if (f.model == "pauli") c.model = Model::pauli;
        else if (f.model == "ising") {
            c.model = Model::ising;
            c.t_max = 20.0;
            c.steps = 1000;
        } else {
            c.model = Model::pbg;
            c.scenario = Party::system;
            c.t_max = 20.0;
            c.steps = 1000;
        }
    }
    if (given("--model") && !f.preset.empty() && f.model != to_string(c.model))
        throw std::invalid_argument("--model conflicts with the preset's model");

    if (given("--lambda")) c.lambda = f.lambda;
    if (given("--omega")) c.omega = f.omega;
    if (given("--rate3")) c.rate3 = f.rate3 == "tan" ? Rate3::tan : Rate3::tanh;
    if (given("--field")) c.ising.lambda_field = f.field;
    if (given("--coupling")) c.ising.delta = f.coupling;
    if (given("--exchange")) c.ising.J = f.exchange;
    if (given("--spins")) c.ising.N = f.spins;
    if (given("--detuning")) c.pbg.detuning = f.detuning;
    if (given("--beta")) c.pbg.beta = f.beta;
    if (given("--t-max")) c.t_max = f.t_max;
    if (given("--steps")) c.steps = f.steps;
    if (given("--scenario")) c.scenario = f.scenario == "system" ? Party::system : Party::memory;
    if (given("--temperature")) c.temperature = f.temperature;
    if (given("--pbg-pole-weight-scale")) c.pbg_pole_weight_scale = f.pole_scale;
    c.workers = f.workers;
    c.output_path = f.out;
    c.validate();
    return c;
}

int run_command(const CLI::App& run, const RunFlags& flags) {
    nmwork::ScenarioConfig cfg;
    try {
        cfg = build_config(run, flags);
    } catch (const std::exception& e) {
        std::cerr << "nmwork: invalid parameters: " << e.what() << '\n';
        return exit_invalid;
    }

    nmwork::ScenarioResult result;
    try {
        result = nmwork::run_scenario(cfg);
    } catch (const nmwork::ModelViolation& e) {
        std::cerr << "nmwork: model violation: " << e.what() << '\n';
        return exit_model;
    } catch (const nmwork::SingularityError& e) {
        std::cerr << "nmwork: model violation: " << e.what() << '\n';
        return exit_model;
    } catch (const nmwork::DegenerateParameters& e) {
        std::cerr << "nmwork: invalid parameters: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "nmwork: model violation: " << e.what() << '\n';
        return exit_model;
    } catch (const std::invalid_argument& e) {
        std::cerr << "nmwork: invalid parameters: " << e.what() << '\n';
        return exit_invalid;
    }

    try {
        nmwork::write_outputs(result);
    } catch (const nmwork::IoError& e) {
        std::cerr << "nmwork: " << e.what() << '\n';
        return exit_io;
    }
    std::cerr << "nmwork: wrote " << result.rows.size() << " rows to " << cfg.output_path << '\n';
    return 0;
}

int verify_command(const std::string& report_path, double pole_scale) {
    nmwork::VerifyOptions opt;
    opt.pbg_pole_weight_scale = pole_scale;
    const auto results = nmwork::verify(opt);
    const auto report = nmwork::verify_report(results);
    const std::string text = report.dump(2);
    if (report_path.empty() || report_path == "-") {
        std::cout << text << '\n';
    } else {
        std::ofstream f(report_path);
        if (!(f << text << '\n')) {
            std::cerr << "nmwork: cannot write report to " << report_path << '\n';
            return exit_io;
        }
    }
    for (const auto& r : results)
        std::cerr << (r.passed ? "[pass] " : "[FAIL] ") << r.module << ": " << r.name << '\n';
    return report["passed"].get<bool>() ? 0 : exit_model;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extractable work under non-Markovian qubit noise"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(nmwork::version));

    RunFlags flags;
    auto* run = app.add_subcommand("run", "Evaluate a model on a time grid and write CSV + manifest");
    run->add_option("--preset", flags.preset, "Named scenario")
        ->check(CLI::IsMember(nmwork::preset_names()));
    run->add_option("--model", flags.model, "Noise model")->check(CLI::IsMember({"pauli", "ising", "pbg"}));
    run->add_option("--lambda", flags.lambda, "pauli: gamma_1 = gamma_2 = lambda/2");
    run->add_option("--omega", flags.omega, "pauli: frequency of gamma_3");
    run->add_option("--rate3", flags.rate3, "pauli: gamma_3 shape")->check(CLI::IsMember({"tan", "tanh"}));
    run->add_option("--field", flags.field, "ising: transverse field lambda");
    run->add_option("--coupling", flags.coupling, "ising: qubit-chain coupling delta");
    run->add_option("--spins", flags.spins, "ising: chain length N (even)");
    run->add_option("--exchange", flags.exchange, "ising: exchange coupling J");
    run->add_option("--detuning", flags.detuning, "pbg: detuning from the band edge");
    run->add_option("--beta", flags.beta, "pbg: characteristic frequency");
    run->add_option("--t-max", flags.t_max, "End of the time window");
    run->add_option("--steps", flags.steps, "Number of time samples (>= 2)");
    run->add_option("--scenario", flags.scenario, "Which qubit is noisy")
        ->check(CLI::IsMember({"system", "memory"}));
    run->add_option("--temperature", flags.temperature, "Kelvin; adds a w_ex_J column");
    run->add_option("--workers", flags.workers, "Threads for the time grid")->capture_default_str();
    run->add_option("--pbg-pole-weight-scale", flags.pole_scale)->group(""); // fault injection
    run->add_option("--out", flags.out, "CSV output path")->required();

    std::string report_path;
    double verify_pole_scale = 1.0;
    auto* verify = app.add_subcommand("verify", "Run every property check; exit 0 iff all pass");
    verify->add_option("--report", report_path, "Write the JSON report here instead of stdout");
    verify->add_option("--pbg-pole-weight-scale", verify_pole_scale)->group(""); // fault injection

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    if (run->parsed()) return run_command(*run, flags);
    return verify_command(report_path, verify_pole_scale);
}
