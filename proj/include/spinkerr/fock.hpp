#pragma once

#include <Eigen/Dense>

#include "spinkerr/params.hpp"

namespace spinkerr {

// Dense complex matrix on the truncated Fock space, basis |0>..|n_max>.
using Operator = Eigen::MatrixXcd;

// Fock space truncated at n_max photons.
class FockSpace {
public:
    static constexpr int kMinPhotons = 3;
    static constexpr int kMaxPhotons = 64;

    explicit FockSpace(int n_max);

    int n_max() const { return n_max_; }
    int dim() const { return n_max_ + 1; }

private:
    int n_max_;
};

Operator annihilation(const FockSpace& space);
Operator creation(const FockSpace& space);
Operator number_operator(const FockSpace& space);

// H = (delta_l + delta_f) n + U a+ a+ a a + xi (a + a+), hbar = 1. Built entry by
// entry, so it is exactly Hermitian.
Operator hamiltonian(const ModelParams& p, const FockSpace& space);

// The same Hamiltonian written around the k-photon resonance:
// (delta_k + delta_f) n + U n (n - k) + xi (a + a+), delta_k = delta_l + U (k - 1).
Operator hamiltonian_k_form(const ModelParams& p, double k, const FockSpace& space);

// H - i (gamma / 2) n.
Operator effective_nonhermitian(const ModelParams& p, const FockSpace& space);

// E_n / hbar = n (delta_l + delta_f) + (n^2 - n) U.
double eigenenergy(const ModelParams& p, int n);

}  // namespace spinkerr
