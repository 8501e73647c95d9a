#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "spinkerr/lindblad.hpp"
#include "spinkerr/params.hpp"
#include "spinkerr/scenario.hpp"

namespace spinkerr {

struct SweepRow {
    double k = 0.0;
    double omega_spin = 0.0;
    DriveSide direction = DriveSide::Left;
    double delta_l = 0.0;
    double delta_f = 0.0;
    double mean_n = 0.0;
    double g2_numeric = 0.0;
    double g3_numeric = 0.0;
    double g4_numeric = 0.0;
    double g2_analytic = 0.0;  // normalised weak-drive state, see weak_drive_correlations
    double g3_analytic = 0.0;
    std::array<double, 6> p{};
    std::string classification;
    int n_max_used = 0;
};

// Steady state, correlations up to mu = 4, weak-drive estimates and the classification
// at tuning k. Omega and the drive side come from cfg. Solver errors are rethrown with
// the operating point prepended to the message.
SweepRow run_point(const PhysicalConfig& cfg, double k, int n_max = kDefaultInitialNMax);

inline constexpr const char* kCsvHeader =
    "k,omega_spin,direction,delta_l,delta_f,mean_n,g2_numeric,g3_numeric,g4_numeric,g2_analytic,g3_analytic,"
    "p0,p1,p2,p3,p4,p5,classification";

// Decimal with 12 significant digits.
std::string format_number(double x);
std::string csv_line(const SweepRow& row);

struct AssertionResult {
    std::string quantity;
    std::string description;
    bool passed;
    std::string observed;
    std::string note;
};

struct ScenarioResult {
    std::vector<SweepRow> rows;  // grid order: direction, omega, k, then explicit points
    std::vector<AssertionResult> assertions;
    std::string summary_json;
    bool passed = true;
};

// Evaluates every grid point on `jobs` worker threads (0 = hardware concurrency) and
// checks the scenario's assertions. Rows keep grid order whatever the completion order;
// a nonzero shuffle_seed permutes the execution order.
ScenarioResult evaluate_scenario(const Scenario& s, unsigned jobs = 0, std::uint64_t shuffle_seed = 0);

// evaluate_scenario, then writes <out>/<name>_<direction>.csv per direction and
// <out>/<name>_summary.json. Throws Error naming the path on I/O failure.
ScenarioResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir, unsigned jobs = 0);

}  // namespace spinkerr
