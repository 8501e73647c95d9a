#pragma once

#include <Eigen/Dense>

#include "spinkerr/fock.hpp"
#include "spinkerr/params.hpp"

namespace spinkerr {

// Density operator on a truncated Fock space. Construction only checks shape and
// finiteness; the physical invariants are verified by check_invariants().
class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    static DensityMatrix fock_state(int dim, int n);
    static DensityMatrix vacuum(int dim) { return fock_state(dim, 0); }

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return entries_; }

    double population(int n) const { return entries_(n, n).real(); }
    std::complex<double> trace() const { return entries_.trace(); }

    // Largest |rho_ij - conj(rho_ji)|.
    double hermiticity_error() const;
    // Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

    // Throws Error when Hermiticity, unit trace or positivity is violated by more than tol.
    void check_invariants(double tol = 1e-10) const;

private:
    Eigen::MatrixXcd entries_;
};

// 0.5 * sum |eig(rho - sigma)|. Both states must share a dimension.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Superoperator L with vec(d rho/dt) = L vec(rho) under column stacking
// (vec index i + j*dim for rho_ij).
Eigen::MatrixXcd liouvillian(const ModelParams& p, const FockSpace& space);

// Direct evaluation of d rho/dt = -i[H, rho] + (gamma/2)(2 a rho a+ - n rho - rho n).
Eigen::MatrixXcd lindblad_rhs(const ModelParams& p, const Eigen::MatrixXcd& rho);

struct SteadyStateReport {
    DensityMatrix rho;
    double residual;         // max |L vec(rho)|, 1/s
    int n_max_used;
    double tail_population;  // P(n_max_used)
};

inline constexpr int kDefaultInitialNMax = 15;
inline constexpr double kDefaultTailTolerance = 1e-10;
// Truncations above this are solved with a sparse LU instead of a dense one.
inline constexpr int kDenseSolveMaxNMax = 31;

// Null vector of the Liouvillian normalised to unit trace. One equation of the
// rank-deficient system is replaced by the trace constraint and solved by LU (dense with a
// condition check up to kDenseSolveMaxNMax, sparse above).
// The truncation doubles from space.n_max() (capped at 64) until P(n_max) < tail_tol.
// Throws TruncationFailure if the cap is reached, DegenerateSystem if the factorization
// is singular or the residual exceeds 1e-8 * gamma.
SteadyStateReport steady_state(const ModelParams& p, const FockSpace& space,
                               double tail_tol = kDefaultTailTolerance);

// 0.01 / max(U, gamma, |delta_l| + |delta_f|, xi).
double default_time_step(const ModelParams& p);

// Classical RK4 with a fixed step. The step is shrunk to t_final / ceil(t_final / dt) so
// the run ends exactly at t_final. Throws StepSizeError when the trace drifts by more
// than 1e-8 or the state blows up.
DensityMatrix evolve(const ModelParams& p, const FockSpace& space, const DensityMatrix& rho0,
                     double t_final, double dt);

}  // namespace spinkerr
