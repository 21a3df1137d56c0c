#pragma once

#include "supra/coupling.hpp"

// Brute-force numerics: dense non-Hermitian diagonalization of the
// single-excitation eigenproblem
//
//   0 = -(i/2) sum_j V_{ri rj} phi_j - (E - omega0) phi_i,
//
// and exact plane-wave lattice sums for the dispersion.  These are the
// ground truth against which the continuum analytics are validated.

namespace supra {

struct SpectrumResult {
    Eigen::VectorXcd eigenvalues;  // E_n - omega0, units gamma0
    Eigen::VectorXd rates;         // Gamma_n = -2 Im(E_n)
    Eigen::VectorXd shifts;        // Delta_n = Re(E_n) - omega0
    Eigen::MatrixXcd eigenvectors; // unit-norm columns, column n <-> eigenvalue n
};

// Eigenvalues of -(i/2) * matrix, sorted by rate descending (ties: shift
// ascending).  The eigenvalue sum is checked against the matrix trace; a
// mismatch beyond 1e-9 relative raises eigensolver_error with the residual.
SpectrumResult solve_modes(const Eigen::MatrixXcd& matrix, const SingleAtomTerm& self);

struct DispersionPoint {
    double k;     // wavevector magnitude, units k0
    double theta; // polar angle
    cplx I;       // lattice sum I_d(k) = sum'_r V_r e^{-i k.r}
    double chi;   // enhancement chi_k = 1 + Re(I)
    double shift; // (Delta_k - delta_omega0)/gamma0 = Im(I)/2
};

// Primed sum over all sites except the origin, evaluated exactly by direct
// summation (no continuum approximation).
DispersionPoint lattice_sum(const std::vector<LatticePosition>& lattice,
                            const CouplingModel& model, const Wavevector& kvec);

// Uniform k-grid driver over lattice_sum, endpoints included.
std::vector<DispersionPoint> dispersion_scan(const std::vector<LatticePosition>& lattice,
                                             const CouplingModel& model, double k_min,
                                             double k_max, int points,
                                             double theta = pi / 2.0, double phi = 0.0);

} // namespace supra
