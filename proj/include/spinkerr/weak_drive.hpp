#pragma once

#include <array>
#include <complex>

#include "spinkerr/params.hpp"

namespace spinkerr {

// Probability amplitudes of |0>..|3> in the weak-drive truncation, together with the
// manifold frequencies nu_n = E_n / hbar. Amplitudes are not normalised.
struct AmplitudeState {
    std::array<std::complex<double>, 4> c{};
    std::array<double, 4> nu{};

    // N = sum |C_n|^2.
    double normalization() const;
    // |C_n|^2 / N.
    std::array<double, 4> probabilities() const;
};

// t -> infinity limit of the cascaded amplitude equations:
//   C1 = -xi / (nu1 - nu0 - i gamma/2)
//   C2 = -sqrt(2) xi C1 / (nu2 - nu0 - i gamma)
//   C3 = -sqrt(3) xi C2 / (nu3 - nu0 - 3i gamma/2)
// with C0 = 1.
AmplitudeState steady_amplitudes(const ModelParams& p);

// Closed-form solution of the perturbative amplitude equations
//   dC0/dt = -i nu0 C0
//   dCn/dt = -i (nu_n - i n gamma/2) Cn - i sqrt(n) xi C(n-1),   n = 1..3
// from the vacuum at t = 0, written as sums of exponentials. Throws DegenerateParameter
// when any denominator (nu_m - nu_n - i (m-n) gamma/2) is within 1e-9 gamma of zero.
AmplitudeState transient_amplitudes(const ModelParams& p, double t);

// Drive-independent closed form
//   ((D)^2 + gamma^2/4) / ((D + U)^2 + gamma^2/4),  D = delta_l + delta_f.
// Leading order in xi/gamma; it drops the two-photon weight from the normalisation and
// overshoots the exact value near the two-photon resonance once P2 is not << P1.
double g2_analytic(const ModelParams& p);

// (D^2 + gamma^2/4)^2 / (((D+U)^2 + gamma^2/4) ((D+2U)^2 + gamma^2/4)).
double g3_analytic(const ModelParams& p);

// g2_analytic * (D^2 + gamma^2/4) / ((D+2U)^2 + gamma^2/4). Algebraically equal to
// g3_analytic; kept separate for cross-checking.
double g3_analytic_product_form(const ModelParams& p);

// 2 P2 / (P1 + 2 P2)^2. Throws UndefinedCorrelation when P1 + 2 P2 = 0.
double g2_from_probabilities(double p1, double p2);

// 2 P2 / P1^2, the further approximation valid once P1 >> P2.
double g2_leading_order(double p1, double p2);

// 6 P3 / (P1 + 2 P2 + 3 P3)^3.
double g3_from_probabilities(double p1, double p2, double p3);

// Equal-time correlations of the normalised weak-drive state built from
// steady_amplitudes: g^(mu) = sum_m m!/(m-mu)! P_m / (sum_m m P_m)^mu over m <= 3.
// Unlike g2_analytic this keeps the xi dependence and stays within a factor ~1.5 of
// the master-equation value at the two-photon resonance.
struct WeakDriveCorrelations {
    double mean_n;
    double g2;
    double g3;
};
WeakDriveCorrelations weak_drive_correlations(const ModelParams& p);

}  // namespace spinkerr
