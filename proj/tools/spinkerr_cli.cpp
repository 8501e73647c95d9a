#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinkerr/errors.hpp"
#include "spinkerr/params.hpp"
#include "spinkerr/scenario.hpp"
#include "spinkerr/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

using spinkerr::format_number;

int cmd_point(const std::string& config_path, double k, const std::string& side, bool as_json) {
    spinkerr::PhysicalConfig cfg = spinkerr::load_config(config_path);
    cfg.drive_side = spinkerr::drive_side_from_string(side);
    const spinkerr::SweepRow row = spinkerr::run_point(cfg, k);
    if (as_json) {
        nlohmann::json j{{"k", row.k},
                         {"omega_spin", row.omega_spin},
                         {"direction", std::string(spinkerr::to_string(row.direction))},
                         {"delta_l", row.delta_l},
                         {"delta_f", row.delta_f},
                         {"mean_n", row.mean_n},
                         {"g2_numeric", row.g2_numeric},
                         {"g3_numeric", row.g3_numeric},
                         {"g4_numeric", row.g4_numeric},
                         {"g2_analytic", row.g2_analytic},
                         {"g3_analytic", row.g3_analytic},
                         {"p", row.p},
                         {"classification", row.classification},
                         {"n_max_used", row.n_max_used}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << spinkerr::kCsvHeader << "\n" << spinkerr::csv_line(row) << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const std::string& scenario, const std::string& out, unsigned jobs) {
    const spinkerr::Scenario s = spinkerr::load_scenario(scenario);
    const spinkerr::ScenarioResult result = spinkerr::run_scenario(s, out, jobs);
    for (const auto& a : result.assertions) {
        std::cout << (a.passed ? "PASS " : "FAIL ") << a.description << " (observed " << a.observed << ")\n";
    }
    std::cout << s.name << ": " << result.rows.size() << " points, "
              << (result.passed ? "all assertions passed" : "assertion failures") << ", output in " << out << "\n";
    return result.passed ? kExitOk : kExitAssertion;
}

int cmd_convert(const std::string& config_path) {
    const spinkerr::PhysicalConfig cfg = spinkerr::load_config(config_path);
    const double u = spinkerr::kerr_strength(cfg);
    const double gamma = spinkerr::decay_rate(cfg);
    const double xi = spinkerr::drive_amplitude(cfg, 0.0);
    const double df = spinkerr::fizeau_shift(cfg);
    std::cout << "omega0   " << format_number(cfg.omega0()) << " rad/s\n"
              << "U        " << format_number(u) << " rad/s\n"
              << "gamma    " << format_number(gamma) << " rad/s\n"
              << "xi       " << format_number(xi) << " rad/s (at delta_l = 0)\n"
              << "Delta_F  " << format_number(df) << " rad/s (" << spinkerr::to_string(cfg.drive_side) << " drive)\n"
              << "U/gamma  " << format_number(u / gamma) << "\n"
              << "xi/gamma " << format_number(xi / gamma) << "\n"
              << "Delta_F/U " << format_number(df / u) << "\n";
    return kExitOk;
}

int cmd_list() {
    for (const auto& name : spinkerr::builtin_scenario_names()) {
        std::cout << name << "  " << spinkerr::builtin_scenario(name).description << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon blockade in a spinning Kerr resonator"};
    app.require_subcommand(1);

    std::string config_path;
    double k = 1.0;
    std::string side = "left";
    bool as_json = false;
    auto* point = app.add_subcommand("point", "Evaluate one operating point");
    point->add_option("--config", config_path, "Physical configuration (JSON)")->required()->check(CLI::ExistingFile);
    point->add_option("--k", k, "Tuning parameter k = 1 - delta_l / U")->required();
    point->add_option("--side", side, "Drive side")->check(CLI::IsMember({"left", "right"}));
    point->add_flag("--json", as_json, "Print JSON instead of a CSV row");

    std::string scenario;
    std::string out_dir;
    unsigned jobs = 0;
    auto* sweep = app.add_subcommand("sweep", "Run a scenario and write CSV and summary files");
    sweep->add_option("--scenario", scenario, "Built-in scenario name or scenario file")->required();
    sweep->add_option("--out", out_dir, "Output directory")->required();
    sweep->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

    std::string convert_path;
    auto* convert = app.add_subcommand("convert", "Print the model rates for a configuration");
    convert->add_option("--config", convert_path, "Physical configuration (JSON)")->required()->check(CLI::ExistingFile);

    auto* list = app.add_subcommand("list-scenarios", "List the built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*point) return cmd_point(config_path, k, side, as_json);
        if (*sweep) return cmd_sweep(scenario, out_dir, jobs);
        if (*convert) return cmd_convert(convert_path);
        if (*list) return cmd_list();
    } catch (const spinkerr::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const spinkerr::Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitUsage;
}
