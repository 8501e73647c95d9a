#include "spinkerr/fock.hpp"

#include <cmath>
#include <string>

#include "spinkerr/errors.hpp"

namespace spinkerr {

FockSpace::FockSpace(int n_max) : n_max_(n_max) {
    if (n_max < kMinPhotons || n_max > kMaxPhotons) {
        throw InvalidParameter("n_max must lie in [" + std::to_string(kMinPhotons) + ", " +
                               std::to_string(kMaxPhotons) + "], got " + std::to_string(n_max));
    }
}

Operator annihilation(const FockSpace& space) {
    Operator a = Operator::Zero(space.dim(), space.dim());
    for (int n = 1; n < space.dim(); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Operator creation(const FockSpace& space) {
    return annihilation(space).adjoint();
}

Operator number_operator(const FockSpace& space) {
    Operator n = Operator::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) n(i, i) = static_cast<double>(i);
    return n;
}

namespace {

void add_drive(Operator& h, double xi) {
    for (int n = 0; n + 1 < h.rows(); ++n) {
        const double coupling = xi * std::sqrt(static_cast<double>(n + 1));
        h(n + 1, n) = coupling;
        h(n, n + 1) = coupling;
    }
}

}  // namespace

Operator hamiltonian(const ModelParams& p, const FockSpace& space) {
    Operator h = Operator::Zero(space.dim(), space.dim());
    for (int n = 0; n < space.dim(); ++n) h(n, n) = eigenenergy(p, n);
    add_drive(h, p.xi);
    return h;
}

Operator hamiltonian_k_form(const ModelParams& p, double k, const FockSpace& space) {
    const double delta_k = p.delta_l + p.u * (k - 1.0);
    Operator h = Operator::Zero(space.dim(), space.dim());
    for (int n = 0; n < space.dim(); ++n) {
        const double nd = n;
        h(n, n) = (delta_k + p.delta_f) * nd + p.u * nd * (nd - k);
    }
    add_drive(h, p.xi);
    return h;
}

Operator effective_nonhermitian(const ModelParams& p, const FockSpace& space) {
    Operator h = hamiltonian(p, space);
    for (int n = 0; n < space.dim(); ++n) h(n, n) -= std::complex<double>(0.0, 0.5 * p.gamma * n);
    return h;
}

double eigenenergy(const ModelParams& p, int n) {
    if (n < 0) throw InvalidParameter("photon number must be >= 0");
    const double nd = n;
    return nd * (p.delta_l + p.delta_f) + (nd * nd - nd) * p.u;
}

}  // namespace spinkerr
