#include "spinkerr/weak_drive.hpp"

#include <cmath>
#include <sstream>

#include "spinkerr/errors.hpp"
#include "spinkerr/fock.hpp"

namespace spinkerr {

using cplx = std::complex<double>;

double AmplitudeState::normalization() const {
    double total = 0.0;
    for (const auto& amp : c) total += std::norm(amp);
    return total;
}

std::array<double, 4> AmplitudeState::probabilities() const {
    const double n = normalization();
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = std::norm(c[i]) / n;
    return out;
}

namespace {

std::array<double, 4> manifold_frequencies(const ModelParams& p) {
    return {eigenenergy(p, 0), eigenenergy(p, 1), eigenenergy(p, 2), eigenenergy(p, 3)};
}

// Complex frequency of manifold n under the non-Hermitian Hamiltonian: nu_n - i n gamma/2.
cplx complex_frequency(const std::array<double, 4>& nu, double gamma, int n) {
    return {nu[n], -0.5 * gamma * n};
}

}  // namespace

AmplitudeState steady_amplitudes(const ModelParams& p) {
    p.validate();
    AmplitudeState s;
    s.nu = manifold_frequencies(p);
    const double xi = p.xi;
    s.c[0] = 1.0;
    s.c[1] = -xi / cplx(s.nu[1] - s.nu[0], -0.5 * p.gamma);
    s.c[2] = -std::sqrt(2.0) * xi * s.c[1] / cplx(s.nu[2] - s.nu[0], -p.gamma);
    s.c[3] = -std::sqrt(3.0) * xi * s.c[2] / cplx(s.nu[3] - s.nu[0], -1.5 * p.gamma);
    return s;
}

AmplitudeState transient_amplitudes(const ModelParams& p, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("transient_amplitudes: t must be >= 0");
    // gamma = 0 is rejected here by the degeneracy guard below rather than by validate().
    if (!std::isfinite(p.gamma) || p.gamma < 0.0 || !std::isfinite(p.xi) || p.xi < 0.0 || !std::isfinite(p.u) ||
        !std::isfinite(p.total_detuning())) {
        throw InvalidParameter("transient_amplitudes: parameters must be finite with gamma, xi >= 0");
    }

    AmplitudeState s;
    s.nu = manifold_frequencies(p);
    std::array<cplx, 4> w{};
    for (int n = 0; n < 4; ++n) w[n] = complex_frequency(s.nu, p.gamma, n);

    // d(m, n) = nu_m - nu_n - i (m - n) gamma / 2.
    const auto d = [&](int m, int n) { return w[m] - w[n]; };
    const double guard = 1e-9 * p.gamma;
    for (int m = 1; m < 4; ++m) {
        for (int n = 0; n < m; ++n) {
            if (!(std::abs(d(m, n)) > guard)) {
                std::ostringstream msg;
                msg << "transient amplitudes are degenerate: |nu_" << m << " - nu_" << n << " - i" << (m - n)
                    << " gamma/2| = " << std::abs(d(m, n)) << " (gamma = " << p.gamma << ")";
                throw DegenerateParameter(msg.str());
            }
        }
    }

    std::array<cplx, 4> e{};
    for (int n = 0; n < 4; ++n) e[n] = std::exp(cplx(0.0, -1.0) * w[n] * t);

    const double xi = p.xi;
    const double xi2 = xi * xi;
    const double xi3 = xi2 * xi;
    const double s2 = std::sqrt(2.0);
    const double s6 = std::sqrt(6.0);

    s.c[0] = e[0];
    s.c[1] = -xi * (e[0] - e[1]) / d(1, 0);
    s.c[2] = s2 * xi2 / d(1, 0) * ((e[0] - e[2]) / d(2, 0) - (e[1] - e[2]) / d(2, 1));
    s.c[3] = -s6 * xi3 * (e[0] - e[3]) / (d(1, 0) * d(2, 0) * d(3, 0)) +
             s6 * xi3 * (e[2] - e[3]) / (d(1, 0) * d(2, 0) * d(3, 2)) +
             s6 * xi3 * (e[1] - e[3]) / (d(1, 0) * d(2, 1) * d(3, 1)) -
             s6 * xi3 * (e[2] - e[3]) / (d(1, 0) * d(2, 1) * d(3, 2));
    return s;
}

double g2_analytic(const ModelParams& p) {
    p.validate();
    const double d = p.total_detuning();
    const double g4 = 0.25 * p.gamma * p.gamma;
    return (d * d + g4) / ((d + p.u) * (d + p.u) + g4);
}

double g3_analytic(const ModelParams& p) {
    p.validate();
    const double d = p.total_detuning();
    const double g4 = 0.25 * p.gamma * p.gamma;
    const double num = d * d + g4;
    return num * num / (((d + p.u) * (d + p.u) + g4) * ((d + 2.0 * p.u) * (d + 2.0 * p.u) + g4));
}

double g3_analytic_product_form(const ModelParams& p) {
    const double d = p.total_detuning();
    const double g4 = 0.25 * p.gamma * p.gamma;
    return (d * d + g4) * g2_analytic(p) / ((d + 2.0 * p.u) * (d + 2.0 * p.u) + g4);
}

double g2_from_probabilities(double p1, double p2) {
    if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0)) {
        throw InvalidParameter("g2_from_probabilities: probabilities must lie in [0, 1]");
    }
    const double denom = p1 + 2.0 * p2;
    if (denom == 0.0) throw UndefinedCorrelation("g2 undefined: P1 + 2 P2 = 0");
    return 2.0 * p2 / (denom * denom);
}

double g2_leading_order(double p1, double p2) {
    if (!(p1 > 0.0)) throw UndefinedCorrelation("g2 undefined: P1 = 0");
    return 2.0 * p2 / (p1 * p1);
}

double g3_from_probabilities(double p1, double p2, double p3) {
    const double denom = p1 + 2.0 * p2 + 3.0 * p3;
    if (denom == 0.0) throw UndefinedCorrelation("g3 undefined: P1 + 2 P2 + 3 P3 = 0");
    return 6.0 * p3 / (denom * denom * denom);
}

WeakDriveCorrelations weak_drive_correlations(const ModelParams& p) {
    const auto prob = steady_amplitudes(p).probabilities();
    const double mean = prob[1] + 2.0 * prob[2] + 3.0 * prob[3];
    if (!(mean > 0.0)) throw UndefinedCorrelation("weak-drive correlations undefined: <n> = 0 (xi = 0?)");
    const double g2 = (2.0 * prob[2] + 6.0 * prob[3]) / (mean * mean);
    const double g3 = 6.0 * prob[3] / (mean * mean * mean);
    return {mean, g2, g3};
}

}  // namespace spinkerr
