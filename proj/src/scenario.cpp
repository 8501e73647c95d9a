#include "spinkerr/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinkerr/errors.hpp"

namespace spinkerr {

using nlohmann::json;

std::vector<double> KRange::grid() const {
    if (points < 1) throw InvalidParameter("k_range.points must be >= 1");
    if (points == 1) return {start};
    std::vector<double> out(points);
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) out[i] = start + step * i;
    out.back() = stop;
    return out;
}

void Scenario::validate() const {
    if (name.empty()) throw InvalidParameter("scenario needs a name");
    if (directions.empty()) throw InvalidParameter("scenario '" + name + "' lists no directions");
    if (k_range) {
        if (k_range->points < 1) throw InvalidParameter("scenario '" + name + "': k_range.points must be >= 1");
        if (!(k_range->start <= k_range->stop)) {
            throw InvalidParameter("scenario '" + name + "': k_range.start must be <= k_range.stop");
        }
        if (omega_spin.empty()) throw InvalidParameter("scenario '" + name + "': omega_spin list is empty");
    }
    if (!k_range && points.empty()) throw InvalidParameter("scenario '" + name + "' has neither k_range nor points");
    if (n_max < 3 || n_max > 64) throw InvalidParameter("scenario '" + name + "': n_max must lie in [3, 64]");
    cfg.validate();
}

namespace {

template <class T>
void read_if(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& out) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) throw InvalidParameter(where + " must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* k : keys) known = known || key == k;
        if (!known) throw InvalidParameter("unknown key '" + key + "' in " + where);
    }
}

PhysicalConfig config_from(const json& j) {
    reject_unknown(j,
                   {"n0", "n2", "v_eff", "q_factor", "wavelength", "radius", "p_in", "omega_spin", "dispersion",
                    "drive_side", "spin_sense"},
                   "config");
    PhysicalConfig cfg;
    read_if(j, "n0", cfg.n0);
    read_if(j, "n2", cfg.n2);
    read_if(j, "v_eff", cfg.v_eff);
    read_if(j, "q_factor", cfg.q_factor);
    read_if(j, "wavelength", cfg.wavelength);
    read_if(j, "radius", cfg.radius);
    read_if(j, "p_in", cfg.p_in);
    read_if(j, "omega_spin", cfg.omega_spin);
    read_if(j, "dispersion", cfg.dispersion);
    if (auto it = j.find("drive_side"); it != j.end()) cfg.drive_side = drive_side_from_string(it->get<std::string>());
    if (auto it = j.find("spin_sense"); it != j.end() && it->get<std::string>() != "ccw") {
        throw InvalidParameter("spin_sense: only 'ccw' is supported");
    }
    return cfg;
}

json config_json(const PhysicalConfig& cfg) {
    return json{{"n0", cfg.n0},
                {"n2", cfg.n2},
                {"v_eff", cfg.v_eff},
                {"q_factor", cfg.q_factor},
                {"wavelength", cfg.wavelength},
                {"radius", cfg.radius},
                {"p_in", cfg.p_in},
                {"omega_spin", cfg.omega_spin},
                {"dispersion", cfg.dispersion},
                {"drive_side", std::string(to_string(cfg.drive_side))},
                {"spin_sense", "ccw"}};
}

Expectation expectation_from(const json& j) {
    reject_unknown(j,
                   {"quantity", "k", "omega_spin", "direction", "k_min", "k_max", "min", "max", "value", "tolerance",
                    "equals", "note"},
                   "expected entry");
    Expectation e;
    e.quantity = j.at("quantity").get<std::string>();
    read_if(j, "k", e.k);
    read_if(j, "omega_spin", e.omega_spin);
    if (auto it = j.find("direction"); it != j.end()) e.direction = drive_side_from_string(it->get<std::string>());
    read_opt(j, "k_min", e.k_min);
    read_opt(j, "k_max", e.k_max);
    read_opt(j, "min", e.min);
    read_opt(j, "max", e.max);
    read_opt(j, "value", e.value);
    read_opt(j, "tolerance", e.tolerance);
    read_opt(j, "equals", e.equals);
    read_if(j, "note", e.note);
    if (e.value.has_value() != e.tolerance.has_value()) {
        throw InvalidParameter("expected '" + e.quantity + "': value and tolerance must be given together");
    }
    if (!e.min && !e.max && !e.value && !e.equals) {
        throw InvalidParameter("expected '" + e.quantity + "' carries no bound");
    }
    return e;
}

json expectation_json(const Expectation& e) {
    json j{{"quantity", e.quantity},
           {"k", e.k},
           {"omega_spin", e.omega_spin},
           {"direction", std::string(to_string(e.direction))}};
    if (e.k_min) j["k_min"] = *e.k_min;
    if (e.k_max) j["k_max"] = *e.k_max;
    if (e.min) j["min"] = *e.min;
    if (e.max) j["max"] = *e.max;
    if (e.value) j["value"] = *e.value;
    if (e.tolerance) j["tolerance"] = *e.tolerance;
    if (e.equals) j["equals"] = *e.equals;
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

Scenario scenario_from(const json& j) {
    reject_unknown(j,
                   {"name", "description", "config", "omega_spin", "k_range", "points", "directions", "n_max",
                    "resonance_checks", "expected"},
                   "scenario");
    Scenario s;
    s.name = j.at("name").get<std::string>();
    read_if(j, "description", s.description);
    if (auto it = j.find("config"); it != j.end()) s.cfg = config_from(*it);
    read_if(j, "omega_spin", s.omega_spin);
    if (auto it = j.find("k_range"); it != j.end() && !it->is_null()) {
        reject_unknown(*it, {"start", "stop", "points"}, "k_range");
        KRange r;
        r.start = it->at("start").get<double>();
        r.stop = it->at("stop").get<double>();
        r.points = it->at("points").get<int>();
        s.k_range = r;
    }
    if (auto it = j.find("points"); it != j.end()) {
        for (const auto& p : *it) {
            reject_unknown(p, {"omega_spin", "k", "label"}, "points entry");
            ScenarioPoint pt;
            pt.omega_spin = p.at("omega_spin").get<double>();
            pt.k = p.at("k").get<double>();
            read_if(p, "label", pt.label);
            s.points.push_back(pt);
        }
    }
    if (auto it = j.find("directions"); it != j.end()) {
        s.directions.clear();
        for (const auto& d : *it) s.directions.push_back(drive_side_from_string(d.get<std::string>()));
    }
    read_if(j, "n_max", s.n_max);
    if (auto it = j.find("resonance_checks"); it != j.end()) {
        for (const auto& r : *it) {
            reject_unknown(r, {"label", "n", "m", "omega_spin", "expect", "note"}, "resonance_checks entry");
            ResonanceCase rc;
            read_if(r, "label", rc.label);
            rc.n = r.at("n").get<int>();
            rc.m = r.at("m").get<int>();
            rc.omega_spin = r.at("omega_spin").get<double>();
            const auto expect = r.at("expect").get<std::string>();
            if (expect != "allowed" && expect != "prohibited") {
                throw InvalidParameter("resonance_checks.expect must be 'allowed' or 'prohibited'");
            }
            rc.expect_allowed = expect == "allowed";
            read_if(r, "note", rc.note);
            s.resonance_checks.push_back(rc);
        }
    }
    if (auto it = j.find("expected"); it != j.end()) {
        for (const auto& e : *it) s.expected.push_back(expectation_from(e));
    }
    s.validate();
    return s;
}

json parse_json(std::string_view text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidParameter(what + " is not valid JSON: " + e.what());
    }
}

template <class F>
auto with_json_errors(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw InvalidParameter(what + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Reference resonator at the two drive powers used by the catalog.
PhysicalConfig reference_config(double p_in) {
    PhysicalConfig cfg;
    cfg.p_in = p_in;
    return cfg;
}

constexpr double kWeakPower = 2e-15;
constexpr double kStrongPower = 0.3e-12;

Expectation point_check(const std::string& quantity, double k, double omega, DriveSide side, std::optional<double> lo,
                        std::optional<double> hi, std::string note) {
    Expectation e;
    e.quantity = quantity;
    e.k = k;
    e.omega_spin = omega;
    e.direction = side;
    e.min = lo;
    e.max = hi;
    e.note = std::move(note);
    return e;
}

Expectation label_check(double k, double omega, DriveSide side, std::string label, std::string note) {
    Expectation e;
    e.quantity = "classification";
    e.k = k;
    e.omega_spin = omega;
    e.direction = side;
    e.equals = std::move(label);
    e.note = std::move(note);
    return e;
}

Scenario fig2() {
    Scenario s;
    s.name = "fig2";
    s.description =
        "Weak drive (2 fW): g2 versus k at rest and at Omega = 29e3 rad/s for both drive sides. The rotation "
        "splits the k = 1 antibunching dip and the k = 2 two-photon peak so that both sit near k = 1.5.";
    s.cfg = reference_config(kWeakPower);
    s.omega_spin = {0.0, 29e3};
    s.k_range = KRange{0.5, 3.0, 251};
    const auto L = DriveSide::Left;
    const auto R = DriveSide::Right;
    s.expected = {
        point_check("g2_numeric", 1.0, 0.0, L, 5e-4, 1.5e-3, "resting resonator, single-photon resonance: g2 ~ 1e-3"),
        point_check("g2_numeric", 2.0, 0.0, L, 540.0, 810.0, "resting resonator, two-photon resonance: g2 ~ 670"),
        point_check("g2_analytic", 2.0, 0.0, L, 880.0, 1070.0, "weak-drive amplitude estimate at k = 2: ~ 970"),
        point_check("g2_numeric", 1.5, 29e3, L, std::nullopt, 2e-3, "left drive is Fizeau-shifted onto the dip"),
        label_check(1.5, 29e3, L, "OnePB", "single-photon blockade for the left drive"),
        point_check("g2_numeric", 1.5, 29e3, R, 500.0, std::nullopt, "right drive is shifted onto the peak"),
        label_check(1.5, 29e3, R, "PIT", "photon-induced tunneling for the right drive"),
        point_check("g2_contrast", 1.5, 29e3, L, 1e5, std::nullopt, "right/left g2 contrast of five or more decades"),
    };
    return s;
}

Scenario fig3() {
    Scenario s;
    s.name = "fig3";
    s.description =
        "Strong drive (0.3 pW) at Omega = 29e3 rad/s: two-photon blockade for the left drive against "
        "tunneling for the right drive around k = 2.5.";
    s.cfg = reference_config(kStrongPower);
    s.omega_spin = {29e3};
    s.k_range = KRange{1.0, 3.0, 201};
    const auto L = DriveSide::Left;
    const auto R = DriveSide::Right;
    s.expected = {
        label_check(2.5, 29e3, L, "TwoPB", "g3 < exp(-<n>) with g2 >= exp(-<n>) + <n> g3"),
        label_check(2.5, 29e3, R, "PIT", "g2, g3, g4 > 1"),
        point_check("g2_numeric", 2.5, 29e3, R, 28.0, 45.0, "right-drive g2 ~ 36"),
        point_check("g3_numeric", 2.5, 29e3, R, 800.0, 1250.0, "right-drive g3 ~ 1000"),
    };
    Expectation peak = point_check("max_mean_n", 0.0, 29e3, R, 0.016, 0.021,
                                   "largest right-drive <n> near the three-photon resonance ~ 0.0185");
    peak.k_min = 2.0;
    peak.k_max = 3.0;
    s.expected.push_back(peak);
    return s;
}

Scenario fig4() {
    Scenario s;
    s.name = "fig4";
    s.description =
        "Strong drive (0.3 pW) at Omega = 29e3 rad/s around k = 1.5: single-photon blockade for the left drive "
        "and two-photon blockade for the right drive.";
    s.cfg = reference_config(kStrongPower);
    s.omega_spin = {29e3};
    s.k_range = KRange{1.0, 2.0, 101};
    s.expected = {
        point_check("g2_numeric", 1.5, 29e3, DriveSide::Left, 0.036, 0.056, "left-drive g2 ~ 0.045"),
        label_check(1.5, 29e3, DriveSide::Left, "OnePB", "single-photon blockade for the left drive"),
        label_check(1.5, 29e3, DriveSide::Right, "TwoPB", "two-photon blockade for the right drive"),
    };
    return s;
}

Scenario fig_s4() {
    Scenario s;
    s.name = "figS4";
    s.description =
        "Weak drive (2 fW) at the moderate rotation Omega = 6.6e3 rad/s: a shallow dip for the left drive and "
        "mild bunching for the right drive at k = 1.5.";
    s.cfg = reference_config(kWeakPower);
    s.omega_spin = {6.6e3};
    s.k_range = KRange{0.5, 2.5, 201};
    s.expected = {
        point_check("g2_numeric", 1.5, 6.6e3, DriveSide::Left, 0.35, 0.43, "left-drive g2 ~ 0.39"),
        point_check("g2_numeric", 1.5, 6.6e3, DriveSide::Right, 2.3, 2.8, "right-drive g2 ~ 2.5"),
    };
    return s;
}

Scenario table_s1() {
    Scenario s;
    s.name = "tableS1";
    s.description =
        "Catalog of nonreciprocal blockade cases at 0.3 pW. Omega = 58e3 rad/s gives |Delta_F| ~ U and "
        "29e3 rad/s gives |Delta_F| ~ U/2. The four allowed cases are simulated; the four with the orders "
        "swapped are checked against 2|Delta_F| = (m - n) U.";
    s.cfg = reference_config(kStrongPower);
    s.omega_spin = {};
    s.points = {
        {58e3, 2.0, "(1) 1PB / PIT, Delta_F = U, Delta_L = -U"},
        {58e3, 3.0, "(3) 2PB / PIT, Delta_F = U, Delta_L = -2U"},
        {29e3, 2.5, "(5) 2PB / PIT, Delta_F = U/2, Delta_L = -3U/2"},
        {29e3, 1.5, "(7) 1PB / 2PB, Delta_F = U/2, Delta_L = -U/2"},
    };
    const auto L = DriveSide::Left;
    const auto R = DriveSide::Right;
    s.expected = {
        label_check(2.0, 58e3, L, "OnePB", "case (1), left"),   label_check(2.0, 58e3, R, "PIT", "case (1), right"),
        label_check(3.0, 58e3, L, "TwoPB", "case (3), left"),   label_check(3.0, 58e3, R, "PIT", "case (3), right"),
        label_check(2.5, 29e3, L, "TwoPB", "case (5), left"),   label_check(2.5, 29e3, R, "PIT", "case (5), right"),
        label_check(1.5, 29e3, L, "OnePB", "case (7), left"),   label_check(1.5, 29e3, R, "TwoPB", "case (7), right"),
    };
    s.resonance_checks = {
        {"(1)", 1, 3, 58e3, true, "1PB with three-photon PIT"},
        {"(2)", 3, 1, 58e3, false, "3PB with single-photon PIT"},
        {"(3)", 2, 4, 58e3, true, "2PB with four-photon PIT"},
        {"(4)", 4, 2, 58e3, false, "4PB with two-photon PIT"},
        {"(5)", 2, 3, 29e3, true, "2PB with three-photon PIT"},
        {"(6)", 3, 2, 29e3, false, "3PB with two-photon PIT"},
        {"(7)", 1, 2, 29e3, true, "1PB with two-photon resonance"},
        {"(8)", 2, 1, 29e3, false, "2PB with single-photon resonance"},
    };
    return s;
}

}  // namespace

PhysicalConfig parse_config(std::string_view json_text) {
    const json j = parse_json(json_text, "config");
    PhysicalConfig cfg = with_json_errors("config", [&] { return config_from(j); });
    cfg.validate();
    return cfg;
}

std::string config_to_json(const PhysicalConfig& cfg) { return config_json(cfg).dump(2); }

Scenario parse_scenario(std::string_view json_text) {
    const json j = parse_json(json_text, "scenario");
    return with_json_errors("scenario", [&] { return scenario_from(j); });
}

std::string scenario_to_json(const Scenario& s) {
    json j{{"name", s.name}, {"description", s.description}, {"config", config_json(s.cfg)}};
    j["omega_spin"] = s.omega_spin;
    if (s.k_range) j["k_range"] = {{"start", s.k_range->start}, {"stop", s.k_range->stop}, {"points", s.k_range->points}};
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back({{"omega_spin", p.omega_spin}, {"k", p.k}, {"label", p.label}});
    j["points"] = pts;
    json dirs = json::array();
    for (auto d : s.directions) dirs.push_back(std::string(to_string(d)));
    j["directions"] = dirs;
    j["n_max"] = s.n_max;
    json res = json::array();
    for (const auto& r : s.resonance_checks) {
        res.push_back({{"label", r.label},
                       {"n", r.n},
                       {"m", r.m},
                       {"omega_spin", r.omega_spin},
                       {"expect", r.expect_allowed ? "allowed" : "prohibited"},
                       {"note", r.note}});
    }
    j["resonance_checks"] = res;
    json exp = json::array();
    for (const auto& e : s.expected) exp.push_back(expectation_json(e));
    j["expected"] = exp;
    return j.dump(2);
}

std::vector<std::string> builtin_scenario_names() { return {"fig2", "fig3", "fig4", "figS4", "tableS1"}; }

Scenario builtin_scenario(std::string_view name) {
    if (name == "fig2") return fig2();
    if (name == "fig3") return fig3();
    if (name == "fig4") return fig4();
    if (name == "figS4") return fig_s4();
    if (name == "tableS1") return table_s1();
    throw InvalidParameter("unknown built-in scenario '" + std::string(name) + "'");
}

Scenario load_scenario(const std::string& name_or_path) {
    for (const auto& n : builtin_scenario_names()) {
        if (n == name_or_path) return builtin_scenario(n);
    }
    return parse_scenario(read_file(name_or_path));
}

PhysicalConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

}  // namespace spinkerr
