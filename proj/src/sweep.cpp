#include "spinkerr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include <json.hpp>

#include "spinkerr/errors.hpp"
#include "spinkerr/photon_stats.hpp"
#include "spinkerr/weak_drive.hpp"

namespace spinkerr {

using nlohmann::json;

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

double rounded(double x) { return std::isfinite(x) ? std::stod(format_number(x)) : x; }

std::string point_context(const PhysicalConfig& cfg, double k) {
    return "k = " + format_number(k) + ", omega_spin = " + format_number(cfg.omega_spin) +
           " rad/s, side = " + std::string(to_string(cfg.drive_side)) + ": ";
}

// Re-raise the active exception with extra context, keeping its type.
[[noreturn]] void rethrow_with_context(const std::string& ctx) {
    try {
        throw;
    } catch (const InvalidDetuning& e) {
        throw InvalidDetuning(ctx + e.what());
    } catch (const InvalidParameter& e) {
        throw InvalidParameter(ctx + e.what());
    } catch (const TruncationFailure& e) {
        throw TruncationFailure(ctx + e.what());
    } catch (const DegenerateSystem& e) {
        throw DegenerateSystem(ctx + e.what());
    } catch (const DegenerateParameter& e) {
        throw DegenerateParameter(ctx + e.what());
    } catch (const StepSizeError& e) {
        throw StepSizeError(ctx + e.what());
    } catch (const UndefinedCorrelation& e) {
        throw UndefinedCorrelation(ctx + e.what());
    } catch (const Error& e) {
        throw Error(ctx + e.what());
    }
}

}  // namespace

SweepRow run_point(const PhysicalConfig& cfg, double k, int n_max) {
    try {
        cfg.validate();
        const ModelParams p = model_params(cfg, k);
        const SteadyStateReport ss = steady_state(p, FockSpace(n_max));
        const CorrelationReport corr = correlations(ss.rho, 4);
        const WeakDriveCorrelations weak = weak_drive_correlations(p);

        SweepRow row;
        row.k = k;
        row.omega_spin = cfg.omega_spin;
        row.direction = cfg.drive_side;
        row.delta_l = p.delta_l;
        row.delta_f = p.delta_f;
        row.mean_n = corr.mean_n;
        row.g2_numeric = corr.g.at(2);
        row.g3_numeric = corr.g.at(3);
        row.g4_numeric = corr.g.at(4);
        row.g2_analytic = weak.g2;
        row.g3_analytic = weak.g3;
        for (std::size_t i = 0; i < row.p.size(); ++i) row.p[i] = corr.pn.at(i);
        row.classification = classify(corr).label();
        row.n_max_used = ss.n_max_used;
        return row;
    } catch (const Error&) {
        rethrow_with_context(point_context(cfg, k));
    }
}

std::string csv_line(const SweepRow& row) {
    std::string out = format_number(row.k);
    const auto add = [&](const std::string& s) {
        out += ',';
        out += s;
    };
    add(format_number(row.omega_spin));
    add(std::string(to_string(row.direction)));
    for (double v : {row.delta_l, row.delta_f, row.mean_n, row.g2_numeric, row.g3_numeric, row.g4_numeric,
                     row.g2_analytic, row.g3_analytic}) {
        add(format_number(v));
    }
    for (double v : row.p) add(format_number(v));
    add(row.classification);
    return out;
}

namespace {

struct Task {
    double omega;
    double k;
    DriveSide side;
};

std::vector<Task> build_tasks(const Scenario& s) {
    std::vector<Task> tasks;
    for (DriveSide side : s.directions) {
        if (s.k_range) {
            const auto ks = s.k_range->grid();
            for (double omega : s.omega_spin) {
                for (double k : ks) tasks.push_back({omega, k, side});
            }
        }
        for (const auto& p : s.points) tasks.push_back({p.omega_spin, p.k, side});
    }
    return tasks;
}

PhysicalConfig config_at(const Scenario& s, double omega, DriveSide side) {
    PhysicalConfig cfg = s.cfg;
    cfg.omega_spin = omega;
    cfg.drive_side = side;
    return cfg;
}

std::vector<SweepRow> run_tasks(const Scenario& s, const std::vector<Task>& tasks, unsigned jobs,
                                std::uint64_t shuffle_seed) {
    std::vector<std::size_t> order(tasks.size());
    std::iota(order.begin(), order.end(), 0);
    if (shuffle_seed != 0) std::shuffle(order.begin(), order.end(), std::mt19937_64(shuffle_seed));

    std::vector<SweepRow> rows(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < order.size();) {
            const std::size_t t = order[i];
            try {
                rows[t] = run_point(config_at(s, tasks[t].omega, tasks[t].side), tasks[t].k, s.n_max);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks.size(), 1)));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

class Checker {
public:
    Checker(const Scenario& s, const std::vector<SweepRow>& rows) : s_(s), rows_(rows) {}

    AssertionResult check(const Expectation& e) {
        AssertionResult r{e.quantity, describe(e), false, "", e.note};
        if (e.quantity == "classification") {
            const std::string label = row_at(e.k, e.omega_spin, e.direction).classification;
            r.observed = label;
            r.passed = e.equals && label == *e.equals;
            return r;
        }
        const double x = numeric(e);
        r.observed = format_number(x);
        r.passed = std::isfinite(x) && (!e.min || x >= *e.min) && (!e.max || x <= *e.max) &&
                   (!e.value || std::abs(x - *e.value) <= *e.tolerance) && !e.equals;
        return r;
    }

private:
    SweepRow row_at(double k, double omega, DriveSide side) {
        for (const auto& row : rows_) {
            if (row.direction == side && same(row.k, k) && same(row.omega_spin, omega)) return row;
        }
        for (const auto& row : extra_) {
            if (row.direction == side && same(row.k, k) && same(row.omega_spin, omega)) return row;
        }
        extra_.push_back(run_point(config_at(s_, omega, side), k, s_.n_max));
        return extra_.back();
    }

    double numeric(const Expectation& e) {
        const std::string& q = e.quantity;
        if (q == "g2_contrast") {
            return row_at(e.k, e.omega_spin, DriveSide::Right).g2_numeric /
                   row_at(e.k, e.omega_spin, DriveSide::Left).g2_numeric;
        }
        if (q == "max_mean_n" || q == "min_g2_numeric" || q == "max_g2_numeric") {
            const double lo = e.k_min.value_or(-INFINITY);
            const double hi = e.k_max.value_or(INFINITY);
            double best = NAN;
            for (const auto& row : rows_) {
                if (row.direction != e.direction || !same(row.omega_spin, e.omega_spin) || row.k < lo - 1e-12 ||
                    row.k > hi + 1e-12) {
                    continue;
                }
                const double v = q == "max_mean_n" ? row.mean_n : row.g2_numeric;
                const bool want_max = q != "min_g2_numeric";
                if (std::isnan(best) || (want_max ? v > best : v < best)) best = v;
            }
            if (std::isnan(best)) throw InvalidParameter("expected '" + q + "': no grid rows in the k window");
            return best;
        }
        const SweepRow row = row_at(e.k, e.omega_spin, e.direction);
        if (q == "mean_n") return row.mean_n;
        if (q == "g2_numeric") return row.g2_numeric;
        if (q == "g3_numeric") return row.g3_numeric;
        if (q == "g4_numeric") return row.g4_numeric;
        if (q == "g2_analytic") return row.g2_analytic;
        if (q == "g3_analytic") return row.g3_analytic;
        if (q.size() == 2 && q[0] == 'p' && q[1] >= '0' && q[1] <= '5') return row.p[q[1] - '0'];
        throw InvalidParameter("unknown expected quantity '" + q + "'");
    }

    static std::string describe(const Expectation& e) {
        std::string d = e.quantity;
        if (e.k_min || e.k_max) {
            d += " over k in [" + format_number(e.k_min.value_or(-INFINITY)) + ", " +
                 format_number(e.k_max.value_or(INFINITY)) + "]";
        } else {
            d += " at k = " + format_number(e.k);
        }
        d += ", omega_spin = " + format_number(e.omega_spin);
        if (e.quantity != "g2_contrast") d += ", " + std::string(to_string(e.direction));
        if (e.equals) d += " == " + *e.equals;
        if (e.min) d += ", >= " + format_number(*e.min);
        if (e.max) d += ", <= " + format_number(*e.max);
        if (e.value) d += ", = " + format_number(*e.value) + " +- " + format_number(*e.tolerance);
        return d;
    }

    const Scenario& s_;
    const std::vector<SweepRow>& rows_;
    std::vector<SweepRow> extra_;
};

json extremum(double value, double k) { return {{"value", rounded(value)}, {"k", rounded(k)}}; }

json series_summary(const Scenario& s, const std::vector<SweepRow>& rows) {
    json out = json::array();
    if (!s.k_range) return out;
    for (DriveSide side : s.directions) {
        for (double omega : s.omega_spin) {
            std::vector<const SweepRow*> series;
            for (const auto& row : rows) {
                if (row.direction == side && row.omega_spin == omega) series.push_back(&row);
            }
            series.resize(std::min<std::size_t>(series.size(), s.k_range->points));
            if (series.empty()) continue;
            const auto by_g2 = [](const SweepRow* a, const SweepRow* b) { return a->g2_numeric < b->g2_numeric; };
            const auto by_n = [](const SweepRow* a, const SweepRow* b) { return a->mean_n < b->mean_n; };
            const SweepRow* g2_min = *std::min_element(series.begin(), series.end(), by_g2);
            const SweepRow* g2_max = *std::max_element(series.begin(), series.end(), by_g2);
            const SweepRow* n_max = *std::max_element(series.begin(), series.end(), by_n);

            json intervals = json::array();
            std::size_t start = 0;
            for (std::size_t i = 1; i <= series.size(); ++i) {
                if (i == series.size() || series[i]->classification != series[start]->classification) {
                    intervals.push_back({{"label", series[start]->classification},
                                         {"k_start", rounded(series[start]->k)},
                                         {"k_end", rounded(series[i - 1]->k)}});
                    start = i;
                }
            }
            out.push_back({{"direction", std::string(to_string(side))},
                           {"omega_spin", rounded(omega)},
                           {"points", series.size()},
                           {"g2_min", extremum(g2_min->g2_numeric, g2_min->k)},
                           {"g2_max", extremum(g2_max->g2_numeric, g2_max->k)},
                           {"mean_n_max", extremum(n_max->mean_n, n_max->k)},
                           {"classification_intervals", intervals}});
        }
    }
    return out;
}

}  // namespace

ScenarioResult evaluate_scenario(const Scenario& s, unsigned jobs, std::uint64_t shuffle_seed) {
    s.validate();
    ScenarioResult result;
    try {
        result.rows = run_tasks(s, build_tasks(s), jobs, shuffle_seed);
    } catch (const Error&) {
        rethrow_with_context("scenario '" + s.name + "', ");
    }

    json resonance = json::array();
    for (const auto& rc : s.resonance_checks) {
        PhysicalConfig cfg = s.cfg;
        cfg.omega_spin = rc.omega_spin;
        const double u = kerr_strength(cfg);
        const double df = std::abs(fizeau_shift(cfg));
        const ResonanceCheck chk = resonance_compatibility(rc.n, rc.m, u, df);
        const bool ok = chk.allowed == rc.expect_allowed;
        const std::string verdict = chk.allowed ? "allowed" : "prohibited";
        result.assertions.push_back({"resonance",
                                     "resonance " + rc.label + " n = " + std::to_string(rc.n) +
                                         ", m = " + std::to_string(rc.m) + " is " +
                                         (rc.expect_allowed ? "allowed" : "prohibited"),
                                     ok, verdict, rc.note});
        resonance.push_back({{"label", rc.label},
                             {"n", rc.n},
                             {"m", rc.m},
                             {"omega_spin", rounded(rc.omega_spin)},
                             {"u", rounded(u)},
                             {"delta_f_abs", rounded(df)},
                             {"result", verdict},
                             {"required_delta_f", rounded(chk.required_delta_f)},
                             {"matches_within_1pct", chk.matches},
                             {"passed", ok}});
    }

    Checker checker(s, result.rows);
    for (const auto& e : s.expected) {
        try {
            result.assertions.push_back(checker.check(e));
        } catch (const Error&) {
            rethrow_with_context("scenario '" + s.name + "', expected '" + e.quantity + "': ");
        }
    }

    json assertions = json::array();
    for (const auto& a : result.assertions) {
        result.passed = result.passed && a.passed;
        assertions.push_back({{"quantity", a.quantity},
                              {"check", a.description},
                              {"observed", a.observed},
                              {"passed", a.passed},
                              {"note", a.note}});
    }

    json points = json::array();
    const std::size_t grid_per_side = s.k_range ? s.omega_spin.size() * s.k_range->grid().size() : 0;
    const std::size_t per_side = grid_per_side + s.points.size();
    for (std::size_t d = 0; d < s.directions.size(); ++d) {
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            const SweepRow& row = result.rows[d * per_side + grid_per_side + i];
            points.push_back({{"label", s.points[i].label},
                              {"direction", std::string(to_string(row.direction))},
                              {"omega_spin", rounded(row.omega_spin)},
                              {"k", rounded(row.k)},
                              {"mean_n", rounded(row.mean_n)},
                              {"g2", rounded(row.g2_numeric)},
                              {"g3", rounded(row.g3_numeric)},
                              {"g4", rounded(row.g4_numeric)},
                              {"classification", row.classification}});
        }
    }

    json summary{{"scenario", s.name},
                 {"description", s.description},
                 {"series", series_summary(s, result.rows)},
                 {"points", points},
                 {"resonance_checks", resonance},
                 {"assertions", assertions},
                 {"passed", result.passed}};
    result.summary_json = summary.dump(2) + "\n";
    return result;
}

ScenarioResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir, unsigned jobs) {
    ScenarioResult result = evaluate_scenario(s, jobs);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory '" + out_dir.string() + "': " + ec.message());

    const auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open '" + path.string() + "' for writing");
        out << text;
        if (!out.flush()) throw Error("write to '" + path.string() + "' failed");
    };

    for (DriveSide side : s.directions) {
        std::string csv = std::string(kCsvHeader) + "\n";
        for (const auto& row : result.rows) {
            if (row.direction == side) csv += csv_line(row) + "\n";
        }
        write(out_dir / (s.name + "_" + std::string(to_string(side)) + ".csv"), csv);
    }
    write(out_dir / (s.name + "_summary.json"), result.summary_json);
    return result;
}

}  // namespace spinkerr
