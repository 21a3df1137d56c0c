#pragma once

#include <vector>

#include <Eigen/Dense>

#include "supra/core.hpp"

// Pairwise inter-atomic coupling mediated by the radiation field,
//
//   V_r / gamma0 = A * sin^2(theta) * exp(eps*i*k0*r) / (k0*r)^alpha,
//
// where r is the pair separation and theta the angle between the separation
// vector and the dipole (x3) axis.  Dipoles are aligned along x3; for
// d = 1,2 the lattice lies in the x1-x2 plane so sin^2(theta) = 1.

namespace supra {

struct CouplingModel {
    cplx A{1.0, 0.0};    // dimensionless strength
    double alpha = 0.0;  // power-law exponent, >= 0
    int epsilon = +1;    // phase sign, +1 or -1
    int d = 1;           // dimension, fixes the reality constraint on A
    bool custom = false; // bypass the per-dimension reality constraint

    void validate() const;
};

// Conventional strength per dimension: A real and >= 0 for d = 1,2 (in-plane
// couplings), purely imaginary with Im(A) <= 0 for d = 3 (free-space dipole
// exchange).
CouplingModel standard_coupling(int d, double magnitude, double alpha, int epsilon = +1);

// d = 2 with the -eps*pi/4 phase of the in-plane (Hankel-type) propagator
// absorbed into A.  Lattice sums built from this model follow the continuum
// curves directly; flagged custom since A is no longer real.
CouplingModel compensated_coupling_2d(double magnitude, double alpha, int epsilon = +1);

struct SingleAtomTerm {
    double gamma0 = 1.0;       // fixed by the unit system
    double delta_omega0 = 0.0; // single-atom Lamb shift, units gamma0

    cplx V0() const { return {gamma0, 2.0 * delta_omega0}; }
    void validate() const;
};

cplx pair_coupling(const LatticePosition& ri, const LatticePosition& rj,
                   const CouplingModel& model);
// Several coupling terms act as a linear combination.
cplx pair_coupling(const LatticePosition& ri, const LatticePosition& rj,
                   const std::vector<CouplingModel>& models);

// Dense matrices beyond this many atoms are rejected to keep
// diagonalization at desk scale.
inline constexpr long default_atom_cap = 8192;

// M[i][j] = V_{ri rj} for i != j, M[i][i] = V0 = gamma0 + 2i*delta_omega0.
Eigen::MatrixXcd coupling_matrix(const std::vector<LatticePosition>& lattice,
                                 const std::vector<CouplingModel>& models,
                                 const SingleAtomTerm& self,
                                 long atom_cap = default_atom_cap);
Eigen::MatrixXcd coupling_matrix(const std::vector<LatticePosition>& lattice,
                                 const CouplingModel& model, const SingleAtomTerm& self,
                                 long atom_cap = default_atom_cap);

// Small-volume (Dicke) limit: every entry equals V0.
Eigen::MatrixXcd dicke_matrix(long N, const SingleAtomTerm& self,
                              long atom_cap = default_atom_cap);

} // namespace supra
