// crackpert: parameter sweeps of the perturbed Mode III interfacial crack SIF.
//
// Exit codes: 0 success, 1 invalid input or scenario, 2 numerical failure.

#include "crackpert/core_model.hpp"
#include "crackpert/scenario_io.hpp"
#include "crackpert/special_integrals.hpp"
#include "crackpert/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace crackpert;

constexpr int exit_invalid = 1;
constexpr int exit_numeric = 2;

void print_violations(const ValidationError& e)
{
    for (const auto& v : e.violations()) std::cerr << "invalid: " << v << "\n";
}

int run_sweep_command(const std::string& preset_id, const std::string& scenario_path, const std::string& out_path,
                      const std::string& plot_path, const std::vector<double>& etas, int samples, unsigned workers)
{
    SweepSpec spec;
    if (!preset_id.empty()) {
        const auto p = preset(preset_id);
        if (!p) {
            std::cerr << "unknown preset '" << preset_id << "'; known:";
            for (const auto& id : preset_ids()) std::cerr << " " << id;
            std::cerr << "\n";
            return exit_invalid;
        }
        spec = *p;
    } else {
        spec = read_scenario_file(scenario_path);
    }
    if (!etas.empty()) spec.etas = etas;
    if (samples > 0) spec.samples = samples;

    const SweepResult result = run_sweep(spec, workers);

    if (out_path.empty() || out_path == "-") {
        emit_csv(result, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::ios_base::failure("cannot open " + out_path);
        emit_csv(result, out);
    }
    if (!plot_path.empty()) {
        std::ofstream plot(plot_path, std::ios::binary);
        if (!plot) throw std::ios_base::failure("cannot open " + plot_path);
        emit_plot_script(result, out_path.empty() || out_path == "-" ? "sweep.csv" : out_path, plot);
    }
    return 0;
}

int run_validate_command(const std::string& path)
{
    const SweepSpec spec = read_scenario_file(path);
    auto errors = spec.violations();
    if (!errors.empty()) throw ValidationError(std::move(errors));
    std::cout << path << ": valid (" << spec.sample_values().size() << " samples x " << spec.etas.size()
              << " contrast values)\n";
    return 0;
}

int run_integrals_command(const std::vector<double>& betas)
{
    std::cout << "beta,I1,I2,I3\n";
    for (double beta : betas) {
        std::cout << format_number(beta) << ',';
        std::cout << (beta == 0.0 ? std::string("inf") : format_number(i1_closed(beta))) << ',';
        std::cout << (beta == 0.0 ? std::string("-inf") : format_number(i2_closed(beta))) << ',';
        std::cout << format_number(i3_closed(beta)) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stress intensity factor of a perturbed Mode III interfacial crack"};
    app.require_subcommand(1);

    std::string preset_id, scenario_path, out_path, plot_path;
    std::vector<double> etas;
    int samples = 0;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
    auto* preset_opt = sweep->add_option("--preset", preset_id, "Built-in table row (table1a ... table2d)");
    auto* scenario_opt = sweep->add_option("--scenario", scenario_path, "Scenario file")->check(CLI::ExistingFile);
    preset_opt->excludes(scenario_opt);
    sweep->add_option("--out", out_path, "CSV destination ('-' for stdout)");
    sweep->add_option("--plot", plot_path, "Gnuplot script destination");
    sweep->add_option("--eta", etas, "Contrast values")->delimiter(',');
    sweep->add_option("--samples", samples, "Samples along the sweep axis")->check(CLI::PositiveNumber);
    sweep->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("file", validate_path, "Scenario file")->required();

    std::vector<double> betas;
    auto* integrals = app.add_subcommand("integrals", "Print I1, I2, I3 at the given arguments");
    integrals->add_option("--beta", betas, "Arguments")->delimiter(',')->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_invalid;
    }

    try {
        if (*sweep) {
            if (preset_id.empty() && scenario_path.empty()) {
                std::cerr << "sweep: give --preset or --scenario\n";
                return exit_invalid;
            }
            return run_sweep_command(preset_id, scenario_path, out_path, plot_path, etas, samples, workers);
        }
        if (*validate) return run_validate_command(validate_path);
        return run_integrals_command(betas);
    } catch (const ValidationError& e) {
        print_violations(e);
        return exit_invalid;
    } catch (const DomainError& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return exit_invalid;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
}
