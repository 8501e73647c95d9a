#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "spinkerr/errors.hpp"
#include "spinkerr/fock.hpp"
#include "spinkerr/params.hpp"
#include "spinkerr/weak_drive.hpp"

using namespace spinkerr;
using doctest::Approx;
using cplx = std::complex<double>;
using Amps = std::array<cplx, 4>;

namespace {

// dC_n/dt = -i (nu_n - i n gamma/2) C_n - i sqrt(n) xi C_{n-1}, nu_n taken from the diagonal of H.
struct AmplitudeOde {
    explicit AmplitudeOde(const ModelParams& p) : xi(p.xi) {
        const Operator h = hamiltonian(p, FockSpace(3));
        for (int n = 0; n < 4; ++n) rate[n] = cplx(h(n, n).real(), -0.5 * p.gamma * n);
    }

    Amps operator()(const Amps& c) const {
        Amps out{};
        for (int n = 0; n < 4; ++n) {
            out[n] = cplx(0.0, -1.0) * rate[n] * c[n];
            if (n > 0) out[n] += cplx(0.0, -1.0) * std::sqrt(static_cast<double>(n)) * xi * c[n - 1];
        }
        return out;
    }

    double stiffness() const {
        double m = 0.0;
        for (const auto& r : rate) m = std::max(m, std::abs(r));
        return std::max(m, xi);
    }

    std::array<cplx, 4> rate{};
    double xi;
};

// Classical RK4 from the vacuum, sampled at t_i = i * t_unit for i = 1..samples.
std::vector<Amps> rk4_samples(const ModelParams& p, double t_unit, int samples) {
    const AmplitudeOde f(p);
    const int per_unit = static_cast<int>(std::ceil(t_unit * f.stiffness() / 2e-3));
    const double h = t_unit / per_unit;
    const auto axpy = [](const Amps& a, double s, const Amps& b) {
        Amps r;
        for (int i = 0; i < 4; ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    Amps c{1.0, 0.0, 0.0, 0.0};
    std::vector<Amps> out;
    for (int i = 0; i < samples; ++i) {
        for (int s = 0; s < per_unit; ++s) {
            const Amps k1 = f(c);
            const Amps k2 = f(axpy(c, 0.5 * h, k1));
            const Amps k3 = f(axpy(c, 0.5 * h, k2));
            const Amps k4 = f(axpy(c, h, k3));
            for (int j = 0; j < 4; ++j) c[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        out.push_back(c);
    }
    return out;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ModelParams reference(double omega, DriveSide side, double k, double p_in = 2e-15) {
    PhysicalConfig cfg;
    cfg.omega_spin = omega;
    cfg.drive_side = side;
    cfg.p_in = p_in;
    return model_params(cfg, k);
}

}  // namespace

TEST_CASE("transient amplitudes start in the vacuum") {
    const AmplitudeState s = transient_amplitudes(ModelParams{0.3, 0.1, 1.5, 0.2, 1.0}, 0.0);
    CHECK(s.c[0] == cplx(1.0, 0.0));
    for (int n = 1; n < 4; ++n) CHECK(std::abs(s.c[n]) < 1e-15);
}

TEST_CASE("transient amplitudes follow an independent RK4 integration") {
    for (const ModelParams& p : {ModelParams{0.5, 0.0, 3.0, 0.2, 1.0}, ModelParams{-1.3, 0.4, 0.8, 0.6, 0.5},
                                 ModelParams{0.0, 0.0, 19.6, 0.25, 1.0}}) {
        const auto num = rk4_samples(p, 1.0 / p.gamma, 20);
        for (int i = 1; i <= 20; ++i) {
            const AmplitudeState exact = transient_amplitudes(p, i / p.gamma);
            for (int n = 0; n < 4; ++n) CHECK(rel(exact.c[n], num[i - 1][n]) < 1e-8);
        }
    }
}

TEST_CASE("transient amplitudes satisfy the equations of motion pointwise") {
    const ModelParams p{0.7, -0.2, 1.1, 0.4, 0.9};
    for (double t : {0.3, 1.7, 4.2}) {
        const double h = 1e-4;
        const AmplitudeState plus = transient_amplitudes(p, t + h);
        const AmplitudeState minus = transient_amplitudes(p, t - h);
        const AmplitudeState mid = transient_amplitudes(p, t);
        const Amps rhs = AmplitudeOde(p)(mid.c);
        for (int n = 0; n < 4; ++n) {
            const cplx fd = (plus.c[n] - minus.c[n]) / (2.0 * h);
            CHECK(std::abs(fd - rhs[n]) < 1e-6 * std::max(1.0, std::abs(rhs[n])));
        }
    }
}

TEST_CASE("transient amplitudes approach the steady amplitudes") {
    for (const ModelParams& p : {ModelParams{0.5, 0.0, 3.0, 0.2, 1.0}, reference(29e3, DriveSide::Left, 1.5)}) {
        const AmplitudeState late = transient_amplitudes(p, 50.0 / p.gamma);
        const AmplitudeState ss = steady_amplitudes(p);
        for (int n = 1; n < 4; ++n) CHECK(rel(late.c[n], ss.c[n]) < 1e-8);
        for (int n = 0; n < 4; ++n) CHECK(late.nu[n] == eigenenergy(p, n));
    }
}

TEST_CASE("degenerate denominators are rejected") {
    CHECK_THROWS_AS(transient_amplitudes(ModelParams{0.0, 0.0, 1.0, 0.1, 0.0}, 1.0), DegenerateParameter);
    CHECK_THROWS_AS(transient_amplitudes(ModelParams{0.0, 0.0, 1.0, 0.1, 1.0}, -1.0), InvalidParameter);
}

TEST_CASE("steady amplitudes") {
    const ModelParams p{0.4, -0.1, 2.0, 0.15, 1.0};
    const AmplitudeState s = steady_amplitudes(p);
    const double d = p.delta_l + p.delta_f;
    CHECK(std::norm(s.c[1]) == Approx(p.xi * p.xi / (d * d + 0.25 * p.gamma * p.gamma)).epsilon(1e-13));
    CHECK(s.normalization() == Approx(std::norm(s.c[0]) + std::norm(s.c[1]) + std::norm(s.c[2]) + std::norm(s.c[3])));
    double total = 0.0;
    for (double x : s.probabilities()) total += x;
    CHECK(total == Approx(1.0).epsilon(1e-15));

    const ModelParams resonant{-0.3, 0.3, 2.0, 0.15, 1.0};
    CHECK(std::abs(steady_amplitudes(resonant).c[1]) == Approx(2.0 * 0.15 / 1.0).epsilon(1e-13));

    ModelParams dark = p;
    dark.xi = 0.0;
    const AmplitudeState z = steady_amplitudes(dark);
    for (int n = 1; n < 4; ++n) CHECK(z.c[n] == cplx(0.0, 0.0));
}

TEST_CASE("amplitudes are ordered in the weak-drive regime") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> det(-5.0, 5.0), u(0.0, 5.0), ratio(0.0, 0.3);
    for (int trial = 0; trial < 200; ++trial) {
        ModelParams p{det(rng), det(rng), u(rng), 0.0, 1.0};
        p.xi = ratio(rng) * p.gamma;
        const AmplitudeState s = steady_amplitudes(p);
        CHECK(std::norm(s.c[3]) <= std::norm(s.c[2]));
        CHECK(std::norm(s.c[2]) <= std::norm(s.c[1]));
        CHECK(std::norm(s.c[1]) <= 1.0);
    }
}

TEST_CASE("closed-form correlations at the extrema") {
    const double ug = 19.6;
    const ModelParams dip{-0.7, 0.7, ug, 0.1, 1.0};
    CHECK(g2_analytic(dip) == Approx(1.0 / (4.0 * ug * ug + 1.0)).epsilon(1e-14));
    const ModelParams peak{-0.7 - ug, 0.7, ug, 0.1, 1.0};
    CHECK(g2_analytic(peak) == Approx(4.0 * ug * ug + 1.0).epsilon(1e-12));

    const ModelParams linear{0.3, 0.2, 0.0, 0.1, 1.0};
    CHECK(g2_analytic(linear) == Approx(1.0));
    CHECK(g3_analytic(linear) == Approx(1.0));

    const ModelParams centred{0.0, 0.0, 2.0, 0.1, 1.0};
    const double g4 = 0.25;
    CHECK(g3_analytic(centred) == Approx(g4 * g4 / ((4.0 + g4) * (16.0 + g4))).epsilon(1e-14));
}

TEST_CASE("g2 tends to one as the nonlinearity vanishes") {
    for (double u : {1e-3, 1e-6, 1e-9}) CHECK(g2_analytic(ModelParams{0.2, 0.1, u, 0.1, 1.0}) == Approx(1.0).epsilon(1e-2 * u / 1e-3));
}

TEST_CASE("g3 product and expanded forms agree; detunings enter only through their sum") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> det(-50.0, 50.0), pos(0.01, 30.0);
    for (int trial = 0; trial < 200; ++trial) {
        const ModelParams p{det(rng), det(rng), pos(rng), pos(rng), pos(rng)};
        CHECK(g3_analytic_product_form(p) == Approx(g3_analytic(p)).epsilon(1e-12));
        const ModelParams merged{p.delta_l + p.delta_f, 0.0, p.u, p.xi, p.gamma};
        CHECK(g2_analytic(p) == Approx(g2_analytic(merged)).epsilon(1e-12));
    }
}

TEST_CASE("moderate rotation: closed form at k = 1.5") {
    CHECK(g2_analytic(reference(6.6e3, DriveSide::Left, 1.5)) == Approx(0.39).epsilon(0.02));
    CHECK(g2_analytic(reference(6.6e3, DriveSide::Right, 1.5)) == Approx(2.53).epsilon(0.02));
}

TEST_CASE("probability forms") {
    CHECK(g2_from_probabilities(0.1, 0.0) == 0.0);
    CHECK(g2_from_probabilities(0.1, 0.005) == Approx(2.0 * 0.005 / (0.11 * 0.11)));
    CHECK(g2_from_probabilities(0.1, 0.005) == Approx(0.826).epsilon(1e-3));
    CHECK(g2_leading_order(0.1, 0.005) == Approx(1.0));
    CHECK(g3_from_probabilities(0.1, 0.01, 0.001) == Approx(6e-3 / std::pow(0.123, 3)));
    CHECK_THROWS_AS(g2_from_probabilities(0.0, 0.0), UndefinedCorrelation);
    CHECK_THROWS_AS(g2_from_probabilities(1.5, 0.0), InvalidParameter);
    CHECK_THROWS_AS(g3_from_probabilities(0.0, 0.0, 0.0), UndefinedCorrelation);
}

TEST_CASE("amplitude probabilities reproduce the closed form away from multiphoton resonances") {
    for (double k : {0.5, 1.0, 1.25, 1.5, 1.75, 2.5, 3.0}) {
        const ModelParams p = reference(0.0, DriveSide::Left, k);
        const auto prob = steady_amplitudes(p).probabilities();
        CHECK(g2_from_probabilities(prob[1], prob[2]) == Approx(g2_analytic(p)).epsilon(0.05));
    }
}

TEST_CASE("normalised weak-drive correlations") {
    const ModelParams p = reference(0.0, DriveSide::Left, 1.0);
    const WeakDriveCorrelations w = weak_drive_correlations(p);
    const auto prob = steady_amplitudes(p).probabilities();
    CHECK(w.mean_n == Approx(prob[1] + 2 * prob[2] + 3 * prob[3]).epsilon(1e-14));
    CHECK(w.g3 == Approx(6.0 * prob[3] / std::pow(w.mean_n, 3)).epsilon(1e-14));
    CHECK(w.g2 == Approx(g2_analytic(p)).epsilon(0.05));

    // At the two-photon resonance the normalised state stays drive dependent and below the closed form.
    const ModelParams peak = reference(0.0, DriveSide::Left, 2.0);
    CHECK(weak_drive_correlations(peak).g2 < g2_analytic(peak));
    CHECK(weak_drive_correlations(peak).g2 == Approx(974.0).epsilon(0.1));

    ModelParams dark = p;
    dark.xi = 0.0;
    CHECK_THROWS_AS(weak_drive_correlations(dark), UndefinedCorrelation);
}
