#include "spinkerr/photon_stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinkerr/errors.hpp"

namespace spinkerr {

namespace {

// m! / (m - mu)!, zero for m < mu.
double falling_factorial(int m, int mu) {
    if (m < mu) return 0.0;
    double out = 1.0;
    for (int j = 0; j < mu; ++j) out *= static_cast<double>(m - j);
    return out;
}

double scale_of(double a, double b) { return std::max(std::abs(a), std::abs(b)); }

bool strictly_less(double a, double b) { return b - a > kComparisonTolerance * scale_of(a, b); }

bool at_least(double a, double b) { return a - b >= -kComparisonTolerance * scale_of(a, b); }

Inequality less_than(std::string name, double lhs, double rhs, bool normative) {
    return {std::move(name), lhs, "<", rhs, rhs - lhs, strictly_less(lhs, rhs), normative};
}

Inequality greater_than(std::string name, double lhs, double rhs, bool normative) {
    return {std::move(name), lhs, ">", rhs, lhs - rhs, strictly_less(rhs, lhs), normative};
}

Inequality greater_equal(std::string name, double lhs, double rhs, bool normative) {
    return {std::move(name), lhs, ">=", rhs, lhs - rhs, at_least(lhs, rhs), normative};
}

std::string g_name(int mu) { return "g" + std::to_string(mu); }

}  // namespace

CorrelationReport correlations(const DensityMatrix& rho, int mu_max) {
    const int n_max = rho.dim() - 1;
    if (mu_max < 1 || mu_max > n_max) {
        throw InvalidParameter("correlations: mu_max must lie in [1, n_max = " + std::to_string(n_max) + "]");
    }

    CorrelationReport r;
    r.pn.resize(n_max + 1);
    double total = 0.0;
    for (int m = 0; m <= n_max; ++m) {
        r.pn[m] = std::clamp(rho.population(m), 0.0, 1.0);
        total += r.pn[m];
        r.mean_n += m * rho.population(m);
    }
    r.tail = 1.0 - total;
    if (!(r.mean_n > 0.0)) throw UndefinedCorrelation("g^(mu) undefined: <n> = 0");

    const FockSpace space(n_max);
    const Operator a = annihilation(space);
    Operator a_mu = Operator::Identity(space.dim(), space.dim());
    for (int mu = 1; mu <= mu_max; ++mu) {
        double moment = 0.0;
        for (int m = mu; m <= n_max; ++m) moment += falling_factorial(m, mu) * rho.population(m);
        const double norm = std::pow(r.mean_n, mu);
        r.g[mu] = moment / norm;

        a_mu = (a_mu * a).eval();
        const double op_moment = (a_mu.adjoint() * a_mu * rho.matrix()).trace().real();
        r.g_operator[mu] = op_moment / norm;
    }

    r.poisson.resize(n_max + 1);
    for (int m = 0; m <= n_max; ++m) r.poisson[m] = poisson_pmf(r.mean_n, m);
    r.f = std::exp(-r.mean_n);
    for (int n = 1; n < mu_max; ++n) r.f_n[n] = r.f + r.mean_n * r.g[n + 1];
    return r;
}

double poisson_pmf(double mean_n, int m) {
    if (!(mean_n >= 0.0) || m < 0) throw InvalidParameter("poisson_pmf: requires mean_n >= 0 and m >= 0");
    if (mean_n == 0.0) return m == 0 ? 1.0 : 0.0;
    return std::exp(m * std::log(mean_n) - mean_n - std::lgamma(m + 1.0));
}

double poisson_deviation(double pn, double poisson_n) {
    if (poisson_n == 0.0) throw UndefinedCorrelation("Poisson deviation undefined: reference probability is 0");
    return (pn - poisson_n) / poisson_n;
}

std::string Classification::label() const {
    switch (kind) {
        case BlockadeKind::OnePB: return "OnePB";
        case BlockadeKind::TwoPB: return "TwoPB";
        case BlockadeKind::NPhotonBlockade: return "NPhotonBlockade(" + std::to_string(order) + ")";
        case BlockadeKind::PIT: return "PIT";
        case BlockadeKind::None: break;
    }
    return "None";
}

Classification classify(const CorrelationReport& report, const std::set<int>& candidates) {
    const int needed = std::max(4, candidates.empty() ? 0 : *candidates.rbegin() + 1);
    for (int mu = 2; mu <= needed; ++mu) {
        if (!report.g.count(mu)) throw InvalidParameter("classify: report lacks g^(" + std::to_string(mu) + ")");
    }
    if (!candidates.empty() && *candidates.begin() < 1) throw InvalidParameter("classify: orders must be >= 1");

    const double f = report.f;
    const double n = report.mean_n;
    const auto g = [&](int mu) { return mu == 1 ? 1.0 : report.g.at(mu); };

    Classification out;
    for (int order : candidates) {
        const double f_order = f + n * g(order + 1);
        auto upper = less_than(g_name(order + 1) + " < f", g(order + 1), f, true);
        auto lower = greater_equal(g_name(order) + " >= f" + std::to_string(order), g(order), f_order, true);
        const bool holds = upper.holds && lower.holds;
        out.evidence.push_back(std::move(upper));
        out.evidence.push_back(std::move(lower));
        if (holds && out.kind == BlockadeKind::None) {
            out.order = order;
            out.kind = order == 1   ? BlockadeKind::OnePB
                       : order == 2 ? BlockadeKind::TwoPB
                                    : BlockadeKind::NPhotonBlockade;
        }
    }

    bool pit = true;
    for (int mu = 2; mu <= 4; ++mu) {
        auto test = greater_than(g_name(mu) + " > 1", g(mu), 1.0, true);
        pit = pit && test.holds;
        out.evidence.push_back(std::move(test));
    }
    for (int mu = 2; mu <= 4; ++mu) out.evidence.push_back(greater_than(g_name(mu) + " > f", g(mu), f, false));
    out.evidence.push_back(greater_than("g3 > g2", g(3), g(2), false));
    out.evidence.push_back(greater_than("g4 > g3", g(4), g(3), false));

    if (out.kind == BlockadeKind::None && pit) out.kind = BlockadeKind::PIT;
    return out;
}

ResonanceCheck resonance_compatibility(int n, int m, double u, double delta_f_abs) {
    if (n < 1 || m < 1) throw InvalidParameter("resonance_compatibility: orders must be >= 1");
    if (!(u > 0.0)) throw InvalidParameter("resonance_compatibility: U must be > 0");
    if (m <= n) return {false, 0.0, false};
    const double required = 0.5 * (m - n) * u;
    const bool matches = std::abs(std::abs(delta_f_abs) - required) <= 0.01 * required;
    return {true, required, matches};
}

}  // namespace spinkerr
