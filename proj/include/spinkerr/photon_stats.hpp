#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "spinkerr/lindblad.hpp"

namespace spinkerr {

struct CorrelationReport {
    double mean_n = 0.0;
    std::map<int, double> g;           // mu -> g^(mu)(0), factorial-sum form
    std::map<int, double> g_operator;  // mu -> <a+^mu a^mu> / <n>^mu
    std::vector<double> pn;            // P(0)..P(n_max)
    std::vector<double> poisson;       // Poisson pmf at mean_n, same length as pn
    double f = 1.0;                    // exp(-<n>)
    std::map<int, double> f_n;         // n -> exp(-<n>) + <n> g^(n+1)
    double tail = 0.0;                 // 1 - sum(pn)
};

// Equal-time correlations g^(1)..g^(mu_max) of rho. Requires 1 <= mu_max <= n_max.
// Throws UndefinedCorrelation when <n> = 0.
CorrelationReport correlations(const DensityMatrix& rho, int mu_max = 4);

// <n>^m e^{-<n>} / m!, evaluated in log space.
double poisson_pmf(double mean_n, int m);

// (P - P_poisson) / P_poisson. Throws UndefinedCorrelation when poisson_n = 0.
double poisson_deviation(double pn, double poisson_n);

enum class BlockadeKind { None, OnePB, TwoPB, NPhotonBlockade, PIT };

// One evaluated inequality "lhs relation rhs". margin is rhs - lhs for "<" and
// lhs - rhs for ">" and ">=", so a positive margin means the inequality holds.
struct Inequality {
    std::string name;
    double lhs;
    std::string relation;
    double rhs;
    double margin;
    bool holds;
    bool normative;  // false for the alternative PIT criteria that never set the label
};

struct Classification {
    BlockadeKind kind = BlockadeKind::None;
    int order = 0;  // blockade order for the nPB kinds, 0 otherwise
    std::vector<Inequality> evidence;

    // "OnePB", "TwoPB", "NPhotonBlockade(n)", "PIT" or "None".
    std::string label() const;
};

// Relative tolerance applied to every comparison: a < b holds only when
// b - a > 1e-12 max(|a|, |b|).
inline constexpr double kComparisonTolerance = 1e-12;

// n-photon blockade for the smallest candidate n with g^(n+1) < f and
// g^(n) >= f^(n) (g^(1) = 1); otherwise PIT when g^(2), g^(3), g^(4) > 1; otherwise None.
// The weaker PIT tests g^(mu) > f, g^(3) > g^(2) and g^(4) > g^(3) > g^(2) > 1 are
// recorded as non-normative evidence. Requires g up to max(candidates) + 1 and mu = 4.
Classification classify(const CorrelationReport& report, const std::set<int>& candidates = {1, 2, 3});

struct ResonanceCheck {
    bool allowed;
    double required_delta_f;  // (m - n) U / 2, rad/s; 0 when prohibited
    bool matches;             // |delta_f_abs - required| <= 1% of required
};

// Condition for an n-photon blockade on one drive side coexisting with an
// m-photon resonance (PIT) on the other: 2|delta_F| = (m - n) U, so n < m.
ResonanceCheck resonance_compatibility(int n, int m, double u, double delta_f_abs);

}  // namespace spinkerr
