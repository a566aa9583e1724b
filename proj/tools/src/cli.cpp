#include "ramsey_cli/cli.hpp"

#include "ramsey/errors.hpp"
#include "ramsey/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ramsey::cli {
namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string format{"csv"};
    int phi_points{32};
    std::string variant;

    std::vector<double> n_values;
    std::optional<double> fringe_n;
    std::string t_grid{"0:1:0.02"};
    std::vector<double> velocities;
};

void emit(const std::string& text, const Options& opt, std::ostream& out) {
    if (opt.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(opt.out_path);
    if (!f) throw ValidationError("cannot open output file '" + opt.out_path + "'");
    f << text;
}

std::string render(const ScanReport& rep, const Options& opt) {
    return opt.format == "json" ? rep.to_json_string() : rep.to_csv();
}

std::string render_selftest(const std::vector<SelfCheck>& checks, const Options& opt) {
    if (opt.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const SelfCheck& c : checks) {
            j.push_back({{"check", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    for (const SelfCheck& c : checks) {
        os << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(64) << c.name << " value="
           << format_number(c.value) << " tol=" << format_number(c.tolerance) << '\n';
    }
    return os.str();
}

PhysicalConfig build_config(const Options& opt) {
    PhysicalConfig cfg = opt.config_path.empty() ? PhysicalConfig{} : load_config(opt.config_path);
    if (!opt.variant.empty()) {
        try {
            cfg.variant = variant_choice_from_string(opt.variant);
        } catch (const DomainError& e) {
            throw ValidationError(e.what());
        }
    }
    cfg.validate();
    return cfg;
}

} // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ramsey interferometry with quantized cavity fields"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--config", opt.config_path, "JSON file with physical parameters");
    app.add_option("--out", opt.out_path, "Write output here instead of stdout");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--phi-points", opt.phi_points, "Phase samples per fringe")->check(CLI::PositiveNumber);
    app.add_option("--variant", opt.variant, "Oscillatory-series variant: A, B, C or auto");

    auto* setup1 = app.add_subcommand("setup1", "Coherent-field Ramsey scan over mean photon number");
    setup1->add_option("--n-values", opt.n_values, "Comma-separated mean photon numbers")->delimiter(',');
    setup1->add_option("--fringe-n", opt.fringe_n, "Photon number whose full fringe is reported (JSON)");
    auto* setup2 = app.add_subcommand("setup2", "Shared-cavity fringe at the configured wait");
    auto* fig4 = app.add_subcommand("fig4", "Visibility versus dimensionless wait T");
    fig4->add_option("--t-grid", opt.t_grid, "Inclusive start:stop:step grid");
    auto* vel = app.add_subcommand("velocity-scan", "Visibility predicted for other atomic velocities");
    vel->add_option("--velocities", opt.velocities, "Comma-separated velocities in m/s")->delimiter(',');
    auto* self = app.add_subcommand("selftest", "Closed forms against the master-equation integrator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help() << '\n' << config_schema();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All) << '\n' << config_schema();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help() << '\n' << config_schema();
        return 1;
    }

    try {
        const PhysicalConfig cfg = build_config(opt);
        if (setup1->parsed()) {
            const auto n = opt.n_values.empty() ? default_setup1_grid() : opt.n_values;
            emit(render(run_setup1(n, cfg, opt.phi_points, opt.fringe_n), opt), opt, out);
        } else if (setup2->parsed()) {
            emit(render(run_setup2(cfg, opt.phi_points), opt), opt, out);
        } else if (fig4->parsed()) {
            emit(render(run_fig4(parse_range(opt.t_grid), cfg), opt), opt, out);
        } else if (vel->parsed()) {
            const auto v = opt.velocities.empty() ? default_velocity_grid() : opt.velocities;
            emit(render(run_velocity_scan(v, cfg), opt), opt, out);
        } else if (self->parsed()) {
            const auto checks = run_selftest(cfg);
            emit(render_selftest(checks, opt), opt, out);
            for (const SelfCheck& c : checks) {
                if (!c.passed) return 2;
            }
        }
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n\n" << config_schema();
        return 1;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return 2;
    }
}

int cli_main(int argc, char** argv) { return cli_main(argc, argv, std::cout, std::cerr); }

} // namespace ramsey::cli
