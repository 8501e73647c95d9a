#include "spinkerr/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "spinkerr/errors.hpp"

namespace spinkerr {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

DensityMatrix::DensityMatrix(MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw InvalidParameter("density matrix must be square and non-empty");
    }
    if (!entries_.allFinite()) throw InvalidParameter("density matrix has non-finite entries");
}

DensityMatrix DensityMatrix::fock_state(int dim, int n) {
    if (n < 0 || n >= dim) throw InvalidParameter("Fock index outside the truncated space");
    MatrixXcd m = MatrixXcd::Zero(dim, dim);
    m(n, n) = 1.0;
    return DensityMatrix(std::move(m));
}

double DensityMatrix::hermiticity_error() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const MatrixXcd herm = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::check_invariants(double tol) const {
    std::ostringstream why;
    if (const double h = hermiticity_error(); h > tol) why << "hermiticity error " << h << "; ";
    if (const double t = std::abs(trace() - 1.0); t > tol) why << "trace error " << t << "; ";
    if (const double e = min_eigenvalue(); e < -tol) why << "negative eigenvalue " << e << "; ";
    if (!why.str().empty()) throw Error("density matrix invariants violated: " + why.str());
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw InvalidParameter("trace_distance: dimension mismatch");
    MatrixXcd diff = rho.matrix() - sigma.matrix();
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

namespace {

std::vector<Eigen::Triplet<cplx>> liouvillian_entries(const ModelParams& p, const FockSpace& space) {
    const int d = space.dim();
    const Operator h = hamiltonian(p, space);
    const Operator a = annihilation(space);
    const Operator n = number_operator(space);

    // vec(A X B) = (B^T kron A) vec(X). With rho_dot = -i H rho + i rho H
    //   + gamma a rho a+ - (gamma/2)(n rho + rho n), every term is a sum of such products.
    const Operator left = -cplx(0.0, 1.0) * h - 0.5 * p.gamma * n;   // acts from the left
    const Operator right = cplx(0.0, 1.0) * h - 0.5 * p.gamma * n;   // acts from the right
    std::vector<Eigen::Triplet<cplx>> out;
    out.reserve(static_cast<std::size_t>(d) * d * 7);
    const auto idx = [d](int i, int j) { return i + j * d; };
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const int row = idx(i, j);
            // (left rho)_ij = sum_k left_ik rho_kj, H is tridiagonal
            for (int k = std::max(0, i - 1); k <= std::min(d - 1, i + 1); ++k) {
                if (left(i, k) != 0.0) out.emplace_back(row, idx(k, j), left(i, k));
            }
            for (int k = std::max(0, j - 1); k <= std::min(d - 1, j + 1); ++k) {
                if (right(k, j) != 0.0) out.emplace_back(row, idx(i, k), right(k, j));
            }
            // gamma (a rho a+)_ij = gamma a_{i,i+1} rho_{i+1,j+1} conj(a_{j,j+1})
            if (i + 1 < d && j + 1 < d && p.gamma != 0.0) {
                out.emplace_back(row, idx(i + 1, j + 1), p.gamma * a(i, i + 1) * std::conj(a(j, j + 1)));
            }
        }
    }
    return out;
}

}  // namespace

MatrixXcd liouvillian(const ModelParams& p, const FockSpace& space) {
    const int d = space.dim();
    MatrixXcd l = MatrixXcd::Zero(d * d, d * d);
    for (const auto& t : liouvillian_entries(p, space)) l(t.row(), t.col()) += t.value();
    return l;
}

MatrixXcd lindblad_rhs(const ModelParams& p, const MatrixXcd& rho) {
    const FockSpace space(static_cast<int>(rho.rows()) - 1);
    const Operator h_eff = effective_nonhermitian(p, space);
    const int d = space.dim();
    const cplx minus_i(0.0, -1.0);
    MatrixXcd out = minus_i * (h_eff * rho - rho * h_eff.adjoint());
    for (int i = 0; i + 1 < d; ++i) {
        for (int j = 0; j + 1 < d; ++j) {
            out(i, j) += p.gamma * std::sqrt(static_cast<double>((i + 1) * (j + 1))) * rho(i + 1, j + 1);
        }
    }
    return out;
}

namespace {

struct SolveResult {
    DensityMatrix rho;
    double residual;
};

// Row 0 (the equation for rho_00) is replaced by tr(rho) = 1.
std::vector<Eigen::Triplet<cplx>> trace_augmented(const ModelParams& p, const FockSpace& space) {
    const int d = space.dim();
    std::vector<Eigen::Triplet<cplx>> entries = liouvillian_entries(p, space);
    std::erase_if(entries, [](const auto& t) { return t.row() == 0; });
    for (int i = 0; i < d; ++i) entries.emplace_back(0, i + i * d, 1.0);
    return entries;
}

[[noreturn]] void throw_singular(const ModelParams& p, const std::string& detail) {
    std::ostringstream msg;
    msg << "steady-state system is singular (" << detail << "); gamma = " << p.gamma
        << " may be zero or the parameters degenerate";
    throw DegenerateSystem(msg.str());
}

VectorXcd solve_dense(const ModelParams& p, const FockSpace& space) {
    const int d = space.dim();
    MatrixXcd system = MatrixXcd::Zero(d * d, d * d);
    for (const auto& t : trace_augmented(p, space)) system(t.row(), t.col()) += t.value();
    Eigen::PartialPivLU<MatrixXcd> lu(system);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
        std::ostringstream detail;
        detail << "rcond = " << rcond;
        throw_singular(p, detail.str());
    }
    VectorXcd rhs = VectorXcd::Zero(d * d);
    rhs(0) = 1.0;
    return lu.solve(rhs);
}

// Large truncations use a sparse factorization; the Liouvillian has at most 7 entries per row.
// SparseLU gives no condition estimate, so the lossless case is rejected up front and the
// residual check below guards the rest.
VectorXcd solve_sparse(const ModelParams& p, const FockSpace& space) {
    if (p.gamma == 0.0) throw_singular(p, "no dissipation");
    const int d = space.dim();
    const auto entries = trace_augmented(p, space);
    Eigen::SparseMatrix<cplx> system(d * d, d * d);
    system.setFromTriplets(entries.begin(), entries.end());
    system.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<cplx>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(system);
    if (lu.info() != Eigen::Success) throw_singular(p, "sparse LU: " + lu.lastErrorMessage());
    VectorXcd rhs = VectorXcd::Zero(d * d);
    rhs(0) = 1.0;
    return lu.solve(rhs);
}

SolveResult solve_trace_augmented(const ModelParams& p, const FockSpace& space) {
    const int d = space.dim();
    const VectorXcd v = space.n_max() <= kDenseSolveMaxNMax ? solve_dense(p, space) : solve_sparse(p, space);
    if (!v.allFinite()) throw DegenerateSystem("steady-state solve produced non-finite values");

    MatrixXcd rho = Eigen::Map<const MatrixXcd>(v.data(), d, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double residual = lindblad_rhs(p, rho).cwiseAbs().maxCoeff();
    return {DensityMatrix(std::move(rho)), residual};
}

}  // namespace

SteadyStateReport steady_state(const ModelParams& p, const FockSpace& space, double tail_tol) {
    if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma) || !std::isfinite(p.u) || !std::isfinite(p.xi) ||
        !std::isfinite(p.total_detuning())) {
        throw InvalidParameter("steady_state: parameters must be finite with gamma >= 0");
    }
    if (!(tail_tol > 0.0)) throw InvalidParameter("steady_state: tail tolerance must be > 0");

    int n_max = space.n_max();
    while (true) {
        const FockSpace current(n_max);
        SolveResult solved = solve_trace_augmented(p, current);
        const double tail = std::abs(solved.rho.population(n_max));
        if (solved.residual > 1e-8 * p.gamma) {
            std::ostringstream msg;
            msg << "steady-state residual " << solved.residual << " exceeds 1e-8 gamma at n_max = " << n_max;
            throw DegenerateSystem(msg.str());
        }
        if (tail < tail_tol) {
            return SteadyStateReport{std::move(solved.rho), solved.residual, n_max, tail};
        }
        if (n_max >= FockSpace::kMaxPhotons) {
            std::ostringstream msg;
            msg << "steady state not converged in photon number: P(n_max = " << n_max << ") = " << tail
                << " >= " << tail_tol;
            throw TruncationFailure(msg.str());
        }
        n_max = std::min(2 * n_max, FockSpace::kMaxPhotons);
    }
}

double default_time_step(const ModelParams& p) {
    const double scale = std::max({p.u, p.gamma, std::abs(p.delta_l) + std::abs(p.delta_f), p.xi});
    if (!(scale > 0.0)) throw InvalidParameter("default_time_step: all rates vanish");
    return 0.01 / scale;
}

DensityMatrix evolve(const ModelParams& p, const FockSpace& space, const DensityMatrix& rho0, double t_final,
                     double dt) {
    p.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("evolve: dt must be > 0");
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw InvalidParameter("evolve: t_final must be >= 0");
    if (rho0.dim() != space.dim()) throw InvalidParameter("evolve: rho0 dimension does not match the Fock space");
    rho0.check_invariants();
    if (t_final == 0.0) return rho0;

    const auto steps = static_cast<long long>(std::ceil(t_final / dt));
    const double h = t_final / static_cast<double>(steps);
    const Operator h_eff = effective_nonhermitian(p, space);
    const Operator h_eff_adj = h_eff.adjoint();
    const int d = space.dim();
    const cplx minus_i(0.0, -1.0);
    Eigen::VectorXd jump(d > 1 ? d - 1 : 0);
    for (int i = 0; i + 1 < d; ++i) jump(i) = std::sqrt(static_cast<double>(i + 1));

    const auto rhs = [&](const MatrixXcd& rho, MatrixXcd& out) {
        out.noalias() = minus_i * (h_eff * rho);
        out.noalias() -= minus_i * (rho * h_eff_adj);
        // gamma a rho a+ shifts rho down the diagonal.
        out.topLeftCorner(d - 1, d - 1).array() +=
            p.gamma * (jump * jump.transpose()).array().cast<cplx>() * rho.bottomRightCorner(d - 1, d - 1).array();
    };

    const cplx trace0 = rho0.trace();
    MatrixXcd rho = rho0.matrix();
    MatrixXcd k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
    for (long long s = 0; s < steps; ++s) {
        rhs(rho, k1);
        tmp = rho + 0.5 * h * k1;
        rhs(tmp, k2);
        tmp = rho + 0.5 * h * k2;
        rhs(tmp, k3);
        tmp = rho + h * k3;
        rhs(tmp, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if ((s & 63) == 63 || s + 1 == steps) {
            const double drift = std::abs(rho.trace() - trace0);
            const double peak = rho.cwiseAbs().maxCoeff();
            if (!(drift <= 1e-8) || !(peak <= 1.0 + 1e-6)) {
                std::ostringstream msg;
                msg << "RK4 integration unstable at t = " << h * static_cast<double>(s + 1) << " (trace drift "
                    << drift << ", max |rho_ij| " << peak << "); reduce dt below " << h << " s, e.g. to "
                    << default_time_step(p) << " s";
                throw StepSizeError(msg.str());
            }
        }
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho));
}

}  // namespace spinkerr
