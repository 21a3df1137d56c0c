#pragma once

#include <functional>

#include "supra/core.hpp"

// Special functions and the numerical quadrature oracle used to validate the
// closed-form oscillatory integrals.

namespace supra {

// sin(x)/x with the removable singularity handled by a short series for
// |x| < 1e-4.
double sinc(double x);

// Zeroth-order Bessel function of the first kind, x >= 0.  Delegates to the
// standard library evaluator (series + asymptotic machinery, machine
// accurate for the x <= 1e3 range used here).
double bessel_j0(double x);

// Independent truncated power series sum_k (-x^2/4)^k / (k!)^2, reliable for
// |x| <= ~12.  Kept separate from bessel_j0 so the two can cross-check each
// other.
double bessel_j0_series(double x);

// Upper incomplete gamma Gamma(s, z) = int_z^inf t^{s-1} e^{-t} dt on the
// principal branch, for s in (0, 3] and complex z.  Power series about z = 0
// for |z| <= 4, modified-Lentz continued fraction beyond; the crossover is
// frozen after testing against a high-precision reference (worst relative
// error ~2e-14 for |z| <= 1e4, |arg z| <= 3*pi/4).
cplx upper_incomplete_gamma(double s, cplx z);

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_subdivisions = 1000000;
    int panel_rule = 15;    // nested Gauss(7)/Kronrod(15) pair
    double omega_max = 1.0; // largest phase rate of the kernel, for pre-splitting

    void validate() const;
};

// Adaptive panel integration of a complex-valued kernel on [lower, upper].
// The interval is pre-split so each starting panel spans at most half an
// oscillation period 2*pi/omega_max, then panels are bisected greedily until
// the accumulated Kronrod error estimate meets the tolerance.  Throws
// quadrature_error (with best estimate attached) if the subdivision budget
// is exhausted.
cplx integrate_oscillatory(const std::function<cplx(double)>& kernel, double lower,
                           double upper, const QuadratureSpec& spec = {});

} // namespace supra
