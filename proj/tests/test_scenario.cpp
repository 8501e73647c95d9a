#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinkerr/errors.hpp"
#include "spinkerr/scenario.hpp"
#include "spinkerr/sweep.hpp"

using namespace spinkerr;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

const char* kSmallScenario = R"({
  "name": "small",
  "description": "two spins, a short k window",
  "config": {"p_in": 2e-15},
  "omega_spin": [0, 29000],
  "k_range": {"start": 1.0, "stop": 2.0, "points": 6},
  "directions": ["left", "right"],
  "expected": [
    {"quantity": "g2_numeric", "k": 1.0, "omega_spin": 0, "direction": "left", "max": 0.01, "note": "dip"},
    {"quantity": "classification", "k": 1.0, "omega_spin": 0, "direction": "left", "equals": "OnePB"}
  ]
})";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("spinkerr_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("k grid") {
    CHECK(KRange{1.0, 2.0, 1}.grid() == std::vector<double>{1.0});
    const auto g = KRange{0.5, 3.0, 251}.grid();
    CHECK(g.size() == 251);
    CHECK(g.front() == 0.5);
    CHECK(g.back() == 3.0);
    CHECK(g[100] == Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS((KRange{1.0, 2.0, 0}.grid()), InvalidParameter);
}

TEST_CASE("scenario parsing and round trip") {
    const Scenario s = parse_scenario(kSmallScenario);
    CHECK(s.name == "small");
    CHECK(s.omega_spin.size() == 2);
    CHECK(s.k_range->points == 6);
    CHECK(s.expected.size() == 2);
    CHECK(s.expected[1].equals == std::optional<std::string>("OnePB"));
    CHECK(s.cfg.p_in == 2e-15);
    CHECK(s.cfg.n0 == 1.4);

    const Scenario again = parse_scenario(scenario_to_json(s));
    CHECK(scenario_to_json(again) == scenario_to_json(s));

    for (const auto& name : builtin_scenario_names()) {
        const Scenario b = builtin_scenario(name);
        CHECK(scenario_to_json(parse_scenario(scenario_to_json(b))) == scenario_to_json(b));
        for (const auto& e : b.expected) CHECK_FALSE(e.note.empty());
    }
}

TEST_CASE("scenario validation") {
    CHECK_THROWS_AS(parse_scenario("{"), InvalidParameter);
    CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "k_range": {"start": 2, "stop": 1, "points": 3}})"),
                    InvalidParameter);
    CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "k_range": {"start": 1, "stop": 2, "points": 0}})"),
                    InvalidParameter);
    CHECK_THROWS_AS(parse_scenario(R"({"name": "x"})"), InvalidParameter);
    CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "kk_range": {}})"), InvalidParameter);
    CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "points": [{"k": 1, "omega_spin": 0}], "directions": []})"),
                    InvalidParameter);
    CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "points": [{"k": 1}]})"), InvalidParameter);
    CHECK_THROWS_AS(parse_config(R"({"n0": 0.9})"), InvalidParameter);
    CHECK_THROWS_AS(parse_config(R"({"drive_side": "up"})"), InvalidParameter);
    CHECK_THROWS_AS(builtin_scenario("fig9"), InvalidParameter);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), InvalidParameter);
}

TEST_CASE("CSV formatting") {
    CHECK(std::string(kCsvHeader) ==
          "k,omega_spin,direction,delta_l,delta_f,mean_n,g2_numeric,g3_numeric,g4_numeric,g2_analytic,g3_analytic,"
          "p0,p1,p2,p3,p4,p5,classification");
    CHECK(format_number(1.5) == "1.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");

    PhysicalConfig cfg;
    const SweepRow row = run_point(cfg, 1.0);
    const std::string line = csv_line(row);
    CHECK(std::count(line.begin(), line.end(), ',') == 17);
    CHECK(line.rfind("1,0,left,", 0) == 0);
    CHECK(line.substr(line.rfind(',') + 1) == row.classification);
}

TEST_CASE("run_point is deterministic and carries context on failure") {
    PhysicalConfig cfg;
    cfg.omega_spin = 29e3;
    CHECK(csv_line(run_point(cfg, 1.5)) == csv_line(run_point(cfg, 1.5)));

    cfg.n2 = 0.0;
    try {
        run_point(cfg, 1.5);
        FAIL("expected an error");
    } catch (const InvalidParameter& e) {
        CHECK(std::string(e.what()).find("k = 1.5") != std::string::npos);
    }
}

TEST_CASE("sweep output: byte-identical, order independent, grid ordered") {
    const Scenario s = parse_scenario(kSmallScenario);
    const fs::path a = scratch("a");
    const fs::path b = scratch("b");
    const ScenarioResult ra = run_scenario(s, a, 1);
    const ScenarioResult rb = run_scenario(s, b, 3);
    CHECK(ra.passed);
    for (const char* f : {"small_left.csv", "small_right.csv", "small_summary.json"}) {
        REQUIRE(fs::exists(a / f));
        CHECK(slurp(a / f) == slurp(b / f));
    }

    const ScenarioResult shuffled = evaluate_scenario(s, 2, 12345);
    REQUIRE(shuffled.rows.size() == ra.rows.size());
    for (std::size_t i = 0; i < ra.rows.size(); ++i) CHECK(csv_line(shuffled.rows[i]) == csv_line(ra.rows[i]));

    const std::string left = slurp(a / "small_left.csv");
    CHECK(left.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(std::count(left.begin(), left.end(), '\n') == 1 + 2 * 6);
    CHECK(ra.rows.front().k == 1.0);
    CHECK(ra.rows[5].k == 2.0);
    CHECK(ra.rows[6].omega_spin == 29e3);
    CHECK(ra.rows[12].direction == DriveSide::Right);
}

TEST_CASE("single-point scenario degenerates to run_point") {
    const Scenario s = parse_scenario(R"({"name": "one", "omega_spin": [29000],
        "k_range": {"start": 1.5, "stop": 1.5, "points": 1}, "directions": ["right"]})");
    const ScenarioResult r = evaluate_scenario(s, 1);
    REQUIRE(r.rows.size() == 1);
    PhysicalConfig cfg;
    cfg.omega_spin = 29e3;
    cfg.drive_side = DriveSide::Right;
    CHECK(csv_line(r.rows[0]) == csv_line(run_point(cfg, 1.5)));
}

TEST_CASE("failing assertions are reported, not thrown") {
    Scenario s = parse_scenario(kSmallScenario);
    s.expected[0].max = 1e-9;
    const ScenarioResult r = evaluate_scenario(s, 1);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.assertions[0].passed);
    CHECK(r.assertions[1].passed);
    CHECK(r.summary_json.find("\"passed\": false") != std::string::npos);
}

TEST_CASE("window and contrast quantities; off-grid points are computed on demand") {
    Scenario s = parse_scenario(kSmallScenario);
    Expectation window;
    window.quantity = "max_mean_n";
    window.omega_spin = 0.0;
    window.direction = DriveSide::Left;
    window.k_min = 1.0;
    window.k_max = 1.0;
    window.min = 0.0;
    Expectation contrast;
    contrast.quantity = "g2_contrast";
    contrast.k = 1.5;
    contrast.omega_spin = 29e3;
    contrast.min = 1e5;
    Expectation off_grid;
    off_grid.quantity = "p1";
    off_grid.k = 1.234;
    off_grid.min = 0.0;
    off_grid.max = 1.0;
    s.expected = {window, contrast, off_grid};
    const ScenarioResult r = evaluate_scenario(s, 1);
    CHECK(r.passed);
    CHECK(std::stod(r.assertions[0].observed) == Approx(r.rows[0].mean_n).epsilon(1e-11));
}

TEST_CASE("resonance checks in the table scenario") {
    const ScenarioResult r = evaluate_scenario(builtin_scenario("tableS1"), 1);
    int resonance = 0;
    for (const auto& a : r.assertions) {
        if (a.quantity == "resonance") {
            ++resonance;
            CHECK(a.passed);
        }
    }
    CHECK(resonance == 8);
    CHECK(r.rows.size() == 8);
}

TEST_CASE("unwritable output directory") {
    const fs::path blocker = scratch("blocker");
    std::ofstream(blocker) << "x";
    Scenario s = parse_scenario(R"({"name": "one", "points": [{"k": 1, "omega_spin": 0}], "directions": ["left"]})");
    try {
        run_scenario(s, blocker / "out", 1);
        FAIL("expected an I/O error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find(blocker.string()) != std::string::npos);
    }
    fs::remove(blocker);
}
