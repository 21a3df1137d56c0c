#pragma once

#include <string>
#include <vector>

#include "supra/analytics.hpp"

// Inverse problem: given a desired collective decay rate Gamma* and shift
// Delta* (units gamma0, shift relative to delta_omega0), find lattice and
// excitation parameters whose superradiant mode realizes them.  Also the
// (N, V) scaling transformation of the enhancement factor, the similarity
// map between dimensions, and the Dicke-compatibility test.

namespace supra {

struct DesignTarget {
    double gamma_target = 2.0; // Gamma*, >= 1 (subradiant targets rejected)
    double delta_target = 0.0; // Delta*

    int d = 1;
    double alpha = 0.0;
    std::optional<int> epsilon; // defaults to +1
    double A_magnitude = 1.0;

    enum class Free { N, k0a } free_parameter = Free::N;
    std::optional<double> k0a; // fixed value (default 3.0) when N is free
    std::optional<double> N;   // fixed value, required when k0a is free
    std::optional<double> theta; // d = 3 polar angle

    void validate() const;
};

struct DesignSolution {
    double xi = 0.0;      // detuning variable, |xi| < pi (= pi only on the Gamma* = 1 edge)
    double chi_max = 1.0; // required peak enhancement

    int d = 1;
    double alpha = 0.0;
    int epsilon = +1;
    cplx A{1.0, 0.0};
    double k0a = 3.0;

    double N_real = 0.0; // exact pre-rounding atom count
    long N = 0;          // rounded to the nearest even-sided m^d
    long m = 0;          // atoms per side
    double k = 1.0;      // operating wavenumber for the rounded lattice, units k0

    // forward model evaluated at the exact solution (must reproduce targets)
    double gamma_pre = 0.0;
    double delta_pre = 0.0;
    // residuals target - forward after rounding N to the realizable lattice
    double gamma_residual = 0.0;
    double delta_residual = 0.0;

    std::vector<std::string> warnings;
};

// Closed-form inversion of the universal curves:
//   xi      = -2 eps arctan(2 Delta*/(Gamma* - 1))
//   chi_max = 1 + (Gamma* - 1)/sinc(xi)
// then chi_max is inverted for the free parameter.  Gamma* = 1 sits on the
// |xi| = pi edge and is only reachable with Delta* != 0.  Throws
// infeasible_error when no parameter set realizes the target (Gamma* < 1,
// degenerate Gamma* = 1 with Delta* = 0, or a free k0a that is forced out of
// the extended-sample regime).
DesignSolution solve_design(const DesignTarget& target);

// Scaling of the enhancement factor under N -> f_N N, V -> f_V V:
//   chi -> f_N * (f_V^{1/d})^{(1 - d - 2 alpha)/2} * chi.
double transform_chi(double chi, double f_N, double f_V, int d, double alpha);

struct SimilarityResult {
    double alpha_prime = 0.0;
    bool feasible = true; // alpha' >= 0 and superradiance constraint at (d', alpha')
};

// Dimensional similarity: (alpha - 1/2)/d = (alpha' - 1/2)/d' maps a
// coupling law in d dimensions onto an equivalent one in d'.
SimilarityResult similar_alpha(int d, double alpha, int d_prime);

// True only for (d = 1, alpha = 0): the sole extended geometry whose
// enhancement is volume-independent, transforming like the Dicke factor N.
bool dicke_compatible(int d, double alpha);

} // namespace supra
