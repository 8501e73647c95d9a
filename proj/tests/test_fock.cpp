#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "spinkerr/errors.hpp"
#include "spinkerr/fock.hpp"

using namespace spinkerr;
using doctest::Approx;

namespace {

ModelParams sample(std::mt19937& rng) {
    std::uniform_real_distribution<double> det(-3.0, 3.0), pos(0.01, 2.0);
    return {det(rng), det(rng), pos(rng), pos(rng), pos(rng)};
}

}  // namespace

TEST_CASE("truncation bounds") {
    CHECK_THROWS_AS(FockSpace(2), InvalidParameter);
    CHECK_THROWS_AS(FockSpace(65), InvalidParameter);
    CHECK(FockSpace(3).dim() == 4);
    CHECK(FockSpace(64).dim() == 65);
}

TEST_CASE("ladder operator matrix elements") {
    const FockSpace space(5);
    const Operator a = annihilation(space);
    Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(space.dim());
    ket(0) = 1.0;
    CHECK((a * ket).norm() == 0.0);
    for (int n = 1; n < space.dim(); ++n) {
        ket.setZero();
        ket(n) = 1.0;
        const Eigen::VectorXcd out = a * ket;
        CHECK(std::abs(out(n - 1) - std::sqrt(static_cast<double>(n))) < 1e-15);
        CHECK(std::abs(out.norm() - std::sqrt(static_cast<double>(n))) < 1e-15);
    }
    CHECK((creation(space) - a.adjoint()).norm() == 0.0);
    CHECK((creation(space) * a - number_operator(space)).norm() < 1e-14);
}

TEST_CASE("canonical commutator below the truncation edge") {
    const FockSpace space(8);
    const Operator a = annihilation(space);
    const Operator comm = a * creation(space) - creation(space) * a;
    const int d = space.dim();
    CHECK((comm.topLeftCorner(d - 1, d - 1) - Operator::Identity(d - 1, d - 1)).norm() < 1e-14);
    CHECK(std::abs(comm(d - 1, d - 1) - double(-(d - 1))) < 1e-14);
}

TEST_CASE("Hamiltonian is exactly Hermitian and matches the eigenenergies") {
    std::mt19937 rng(7);
    const FockSpace space(12);
    for (int trial = 0; trial < 20; ++trial) {
        ModelParams p = sample(rng);
        const Operator h = hamiltonian(p, space);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        for (int n = 0; n < space.dim(); ++n) CHECK(h(n, n).real() == eigenenergy(p, n));
        for (int n = 0; n + 1 < space.dim(); ++n) {
            CHECK(h(n + 1, n).real() == Approx(p.xi * std::sqrt(n + 1.0)).epsilon(1e-15));
        }

        p.xi = 0.0;
        const Operator h0 = hamiltonian(p, space);
        CHECK((h0 - Operator(h0.diagonal().asDiagonal())).norm() == 0.0);
    }
}

TEST_CASE("eigenenergies of the lowest manifolds") {
    const ModelParams p{0.3, -0.7, 1.9, 0.0, 1.0};
    const double d = p.delta_l + p.delta_f;
    CHECK(eigenenergy(p, 0) == 0.0);
    CHECK(eigenenergy(p, 1) == Approx(d));
    CHECK(eigenenergy(p, 2) == Approx(2 * d + 2 * p.u));
    CHECK(eigenenergy(p, 3) == Approx(3 * d + 6 * p.u));
    CHECK_THROWS_AS(eigenenergy(p, -1), InvalidParameter);
}

TEST_CASE("anharmonicity is 2U for every manifold") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const ModelParams p = sample(rng);
        for (int n = 1; n < 30; ++n) {
            const double second = eigenenergy(p, n + 1) - 2.0 * eigenenergy(p, n) + eigenenergy(p, n - 1);
            CHECK(second == Approx(2.0 * p.u).epsilon(1e-9));
        }
    }
}

TEST_CASE("harmonic ladder for a linear resonator at rest") {
    const ModelParams p{0.8, 0.0, 0.0, 0.0, 1.0};
    const FockSpace space(6);
    const Operator h = hamiltonian(p, space);
    for (int n = 1; n < space.dim(); ++n) CHECK((h(n, n) - h(n - 1, n - 1)).real() == Approx(0.8));
}

TEST_CASE("k-form and detuning form give the same matrix") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> kd(-1.0, 4.0);
    const FockSpace space(10);
    for (int trial = 0; trial < 20; ++trial) {
        const ModelParams p = sample(rng);
        const double k = kd(rng);
        const Operator diff = hamiltonian(p, space) - hamiltonian_k_form(p, k, space);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-12 * (1.0 + hamiltonian(p, space).cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("non-Hermitian Hamiltonian") {
    std::mt19937 rng(5);
    const FockSpace space(7);
    for (int trial = 0; trial < 10; ++trial) {
        ModelParams p = sample(rng);
        const Operator h_eff = effective_nonhermitian(p, space);
        for (int n = 0; n < space.dim(); ++n) CHECK(h_eff(n, n).imag() == Approx(-0.5 * p.gamma * n));
        const Operator anti = (h_eff - h_eff.adjoint()) / std::complex<double>(0.0, 2.0);
        Eigen::SelfAdjointEigenSolver<Operator> herm(anti);
        CHECK(herm.eigenvalues().maxCoeff() <= 1e-12);
        Eigen::ComplexEigenSolver<Operator> es(h_eff);
        CHECK(es.eigenvalues().imag().maxCoeff() <= 1e-9);

        p.gamma = 0.0;
        CHECK((effective_nonhermitian(p, space) - hamiltonian(p, space)).norm() == 0.0);
    }
}
