#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinkerr/params.hpp"

namespace spinkerr {

struct KRange {
    double start = 1.0;
    double stop = 1.0;
    int points = 1;

    // Evenly spaced, start + i (stop - start) / (points - 1); {start} for one point.
    std::vector<double> grid() const;
};

// A single (Omega, k) operating point evaluated for every scenario direction.
struct ScenarioPoint {
    double omega_spin = 0.0;
    double k = 1.0;
    std::string label;
};

// Whether an n-photon blockade on one side can coexist with an m-photon resonance on
// the other at the Fizeau shift produced by omega_spin.
struct ResonanceCase {
    std::string label;
    int n = 1;
    int m = 2;
    double omega_spin = 0.0;
    bool expect_allowed = true;
    std::string note;
};

// One assertion on the sweep output.
//
// Point quantities (looked up at k, omega_spin, direction): mean_n, g2_numeric, g3_numeric,
// g4_numeric, g2_analytic, g3_analytic, p0..p5, classification.
// Window quantities (over grid rows with k_min <= k <= k_max at omega_spin, direction):
// max_mean_n, min_g2_numeric, max_g2_numeric.
// Contrast quantity g2_contrast: g2_numeric(right) / g2_numeric(left) at k, omega_spin.
//
// A numeric check passes when every supplied bound holds: min <= x <= max and
// |x - value| <= tolerance. A string check compares against `equals`.
struct Expectation {
    std::string quantity;
    double k = 0.0;
    double omega_spin = 0.0;
    DriveSide direction = DriveSide::Left;
    std::optional<double> k_min;
    std::optional<double> k_max;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<double> value;
    std::optional<double> tolerance;
    std::optional<std::string> equals;
    std::string note;
};

struct Scenario {
    std::string name;
    std::string description;
    PhysicalConfig cfg;  // omega_spin and drive_side are overridden per grid point
    std::vector<double> omega_spin{0.0};
    std::optional<KRange> k_range;
    std::vector<ScenarioPoint> points;
    std::vector<DriveSide> directions{DriveSide::Left, DriveSide::Right};
    int n_max = 15;
    std::vector<ResonanceCase> resonance_checks;
    std::vector<Expectation> expected;

    // Throws InvalidParameter for an empty name, a k range with points < 1 or start > stop,
    // no directions, or neither a k range nor explicit points.
    void validate() const;
};

// JSON text <-> domain types. Unknown keys are rejected; missing keys take the defaults above.
PhysicalConfig parse_config(std::string_view json_text);
std::string config_to_json(const PhysicalConfig& cfg);
Scenario parse_scenario(std::string_view json_text);
std::string scenario_to_json(const Scenario& s);

std::vector<std::string> builtin_scenario_names();
// Throws InvalidParameter for an unknown name.
Scenario builtin_scenario(std::string_view name);

// A built-in name or the path of a JSON scenario file.
Scenario load_scenario(const std::string& name_or_path);
PhysicalConfig load_config(const std::string& path);

}  // namespace spinkerr
