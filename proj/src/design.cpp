#include "supra/design.hpp"

#include <cmath>

namespace supra {

void DesignTarget::validate() const {
    if (d < 1 || d > 3)
        throw validation_error(errc::bad_dimension, "dimension must be 1, 2 or 3");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw validation_error(errc::bad_alpha, "alpha must be finite and >= 0");
    if (epsilon && *epsilon != 1 && *epsilon != -1)
        throw validation_error(errc::bad_epsilon, "epsilon must be +1 or -1");
    if (!(A_magnitude > 0.0) || !std::isfinite(A_magnitude))
        throw validation_error(errc::bad_strength, "coupling strength must be finite and > 0");
    if (!std::isfinite(gamma_target) || !std::isfinite(delta_target))
        throw validation_error(errc::bad_target, "targets must be finite");
    if (k0a && !(*k0a > 1.0))
        throw validation_error(errc::lattice_not_extended, "fixed k0*a must exceed 1");
    if (N && (!(*N >= 2.0) || !(*N <= 1e15)))
        throw validation_error(errc::bad_atom_count, "fixed N must lie in [2, 1e15]");
    if (free_parameter == Free::N && N)
        throw validation_error(errc::bad_config, "N cannot be both free and fixed");
    if (free_parameter == Free::k0a && k0a)
        throw validation_error(errc::bad_config, "k0*a cannot be both free and fixed");
    if (free_parameter == Free::k0a && !N)
        throw validation_error(errc::bad_config, "freeing k0*a requires a fixed N");
    if (d == 3 && !theta)
        throw validation_error(errc::bad_wavevector, "d = 3 requires the polar angle theta");
    if (theta && !(*theta >= 0.0 && *theta <= pi))
        throw validation_error(errc::bad_wavevector, "theta must lie in [0, pi]");
}

namespace {

long nearest_even_side(double m_real) {
    long m = 2 * std::lround(m_real / 2.0);
    return m < 2 ? 2 : m;
}

long int_pow(long base, int exp) {
    long p = 1;
    for (int i = 0; i < exp; ++i) p *= base;
    return p;
}

} // namespace

DesignSolution solve_design(const DesignTarget& target) {
    target.validate();
    if (!superradiance_constraint(target.d, target.alpha))
        throw validation_error(errc::constraint_violated,
                               "no superradiant peak: alpha >= (d+1)/2");
    if (!(target.gamma_target >= 1.0))
        throw infeasible_error(
            "subradiant target Gamma* < gamma0 is outside the superradiant design space");

    const int eps = target.epsilon.value_or(+1);
    DesignSolution s;
    s.d = target.d;
    s.alpha = target.alpha;
    s.epsilon = eps;
    s.A = (target.d == 3) ? cplx(0.0, -target.A_magnitude) : cplx(target.A_magnitude, 0.0);

    // Invert the universal curves for (xi, chi_max).  The shift-to-rate
    // ratio fixes xi alone: Delta/(Gamma - 1) = -eps tan(xi/2)/2.
    if (target.gamma_target == 1.0) {
        if (target.delta_target == 0.0)
            throw infeasible_error("Gamma* = 1 with Delta* = 0 is the bare atom");
        // Gamma = 1 requires sinc(xi) = 0: the xi = +-pi edge, where the
        // shift survives with magnitude (chi_max - 1)/pi.
        s.xi = -eps * (target.delta_target > 0.0 ? 1.0 : -1.0) * pi;
        s.chi_max = 1.0 + pi * std::abs(target.delta_target);
    } else {
        const double rho_r = target.delta_target / (target.gamma_target - 1.0);
        s.xi = -2.0 * eps * std::atan(2.0 * rho_r);
        s.chi_max = 1.0 + (target.gamma_target - 1.0) / sinc(s.xi);
    }

    const DimensionConstants dc = dimension_constants(target.d, target.theta);
    if (!(dc.c > 0.0))
        throw infeasible_error("angular weight vanishes (theta on the dipole axis)");

    // chi_max - 1 = |A| c_d b_d^e / e * (k0a)^q * (N^{1/d})^e
    const double e = 0.5 * (target.d + 1) - target.alpha;
    const double q = 0.5 * (1 - target.d) - target.alpha;
    const double base = (s.chi_max - 1.0) * e / (target.A_magnitude * dc.c * std::pow(dc.b, e));

    if (target.free_parameter == DesignTarget::Free::N) {
        s.k0a = target.k0a.value_or(3.0);
        s.N_real = std::pow(base * std::pow(s.k0a, -q), target.d / e);
        double m_real = std::pow(s.N_real, 1.0 / target.d);
        if (!(m_real <= 1e6)) { // keep the rounded lattice in realizable (and long) range
            m_real = 1e6;
            s.warnings.push_back("rounded lattice capped at 1e6 atoms per side");
        }
        s.m = nearest_even_side(m_real);
        s.N = int_pow(s.m, target.d);
        if (s.N_real < 1.0)
            s.warnings.push_back("target needs fewer than one atom; the minimal lattice overshoots");
    } else {
        s.N_real = *target.N;
        s.N = std::llround(*target.N);
        s.m = nearest_even_side(std::pow(s.N_real, 1.0 / target.d));
        if (int_pow(s.m, target.d) != s.N)
            s.warnings.push_back("fixed N is not an even-sided m^d lattice count");
        if (std::abs(q) < 1e-12)
            throw infeasible_error(
                "k0*a drops out of the enhancement for d = 1, alpha = 0; fix N instead");
        s.k0a = std::pow(base * std::pow(s.N_real, -e / target.d), 1.0 / q);
        if (!std::isfinite(s.k0a))
            throw infeasible_error("no finite k0*a realizes the target");
        if (!(s.k0a > 1.0))
            throw infeasible_error("target forces k0*a <= 1, outside the extended-sample regime");
    }

    if (s.N_real < 100.0)
        s.warnings.push_back("N < 100: continuum formulas are approximate at this size");
    if (target.d == 3 && eps == -1)
        s.warnings.push_back("d = 3 standard coupling realizes epsilon = +1 only");

    // Forward model at the exact (pre-rounding) solution.
    s.gamma_pre = chi_of_xi(s.xi, s.chi_max);
    s.delta_pre = shift_of_xi(s.xi, s.chi_max, eps);

    // Residuals after realizing the rounded lattice at the same xi.
    AnalyticContext rctx;
    rctx.d = target.d;
    rctx.alpha = target.alpha;
    rctx.epsilon = eps;
    rctx.A = s.A;
    rctx.k0a = s.k0a;
    rctx.N = static_cast<double>(s.N);
    rctx.theta = target.theta;
    const double chim_rounded = chi_max(rctx);
    s.gamma_residual = target.gamma_target - chi_of_xi(s.xi, chim_rounded);
    s.delta_residual = target.delta_target - shift_of_xi(s.xi, chim_rounded, eps);

    s.k = 1.0 + s.xi / (s.k0a * dc.b * std::pow(static_cast<double>(s.N), 1.0 / target.d));
    if (!(s.k > 0.0))
        s.warnings.push_back("operating wavenumber k <= 0 on the rounded lattice");
    return s;
}

double transform_chi(double chi, double f_N, double f_V, int d, double alpha) {
    if (d < 1 || d > 3)
        throw validation_error(errc::bad_dimension, "dimension must be 1, 2 or 3");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw validation_error(errc::bad_alpha, "alpha must be finite and >= 0");
    if (!(f_N > 0.0) || !(f_V > 0.0) || !std::isfinite(f_N) || !std::isfinite(f_V))
        throw validation_error(errc::bad_config, "scale factors must be finite and > 0");
    return f_N * std::pow(std::pow(f_V, 1.0 / d), 0.5 * (1.0 - d - 2.0 * alpha)) * chi;
}

SimilarityResult similar_alpha(int d, double alpha, int d_prime) {
    if (d < 1 || d > 3 || d_prime < 1 || d_prime > 3)
        throw validation_error(errc::bad_dimension, "dimensions must be 1, 2 or 3");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw validation_error(errc::bad_alpha, "alpha must be finite and >= 0");
    SimilarityResult r;
    r.alpha_prime = (d_prime == d) ? alpha : 0.5 + d_prime * (alpha - 0.5) / d;
    r.feasible = r.alpha_prime >= 0.0 && r.alpha_prime < 0.5 * (d_prime + 1);
    return r;
}

bool dicke_compatible(int d, double alpha) {
    if (d < 1 || d > 3)
        throw validation_error(errc::bad_dimension, "dimension must be 1, 2 or 3");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw validation_error(errc::bad_alpha, "alpha must be finite and >= 0");
    return std::abs(alpha - 0.5 * (1 - d)) < 1e-12;
}

} // namespace supra
