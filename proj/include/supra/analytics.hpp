#pragma once

#include "supra/coupling.hpp"
#include "supra/specfun.hpp"

// Continuum theory of the superradiant resonance: the enhancement factor
// chi_max, the universal finite-size lineshape chi(xi) / shift(xi), and the
// closed-form oscillatory integrals J_cc, J_sc, J_cs, J_ss that assemble the
// continuum lattice sum I_d(k).

namespace supra {

// Continuum counterpart of (LatticeSpec, CouplingModel).  N is kept real so
// the inverse-design path can work with the exact pre-rounding solution.
struct AnalyticContext {
    int d = 1;
    double alpha = 0.0;
    int epsilon = +1;
    cplx A{1.0, 0.0}; // strength entering I_d; chi_max uses its magnitude
    double k0a = 3.0;
    double N = 2.0;
    std::optional<double> theta; // polar angle of k, required for d = 3

    double beta() const;   // (d-1)/2 - alpha
    double Nprime() const; // b_d * N^(1/d)
    void validate() const;

    // Maps a lattice/coupling pair onto its continuum description.  For the
    // phase-compensated d = 2 model the continuum strength is |A|: the
    // absorbed propagator phase is exactly what the continuum derivation
    // strips off.
    static AnalyticContext from(const LatticeSpec& spec, const CouplingModel& model,
                                std::optional<double> theta = std::nullopt);
};

// Necessary condition for a superradiant resonance: the integrated coupling
// must grow with sample size, i.e. 0 <= alpha < (d+1)/2.
bool superradiance_constraint(int d, double alpha);

// Peak enhancement chi_max = Gamma_{k=k0}/gamma0 in the continuum limit,
//   1 + |A| c_d b_d^e / e * (k0a)^{(1-d)/2-alpha} * (N^{1/d})^e,
// with e = (d+1)/2 - alpha.  Accurate for N >> 1 (the continuum replaces the
// discrete sum); treat values below N ~ 100 as indicative only.
double chi_max(const AnalyticContext& ctx);

// Equivalent parameterizations of chi_max - 1 = L_d * (...), stated in terms
// of the sample volume V = N*(k0a)^d, number density rho = N/V, and
// wavelength lambda0 = 2*pi (units 1/k0).  All three agree with chi_max to
// rounding error; exposed for the consistency tests.
enum class ChiForm { count_volume, volume_density, count_density };
double chi_max_parameterized(const AnalyticContext& ctx, ChiForm form);

// Prefactor L_d(alpha) = 2 b_d^e c_d / (d+1-2alpha) * |A| / (2 pi)^{(d-1)/2 + alpha}.
double L_d(int d, double alpha, cplx A, std::optional<double> theta = std::nullopt);

// Universal finite-size curves in the detuning variable
// xi = (k - k0) * a * b_d * N^(1/d):
//   chi(xi)   = 1 + (chi_max - 1) * sinc(xi)
//   shift(xi) = epsilon * (chi_max - 1) * (cos(xi) - 1) / (2 xi)
double chi_of_xi(double xi, double chi_max);
double shift_of_xi(double xi, double chi_max, int epsilon);

// Location of the shift extrema: the root of xi*sin(xi) + cos(xi) - 1 = 0
// (equivalently tan(xi/2) = xi) in (pi/2, pi); ~2.3311.
double find_offset_h();

struct ContinuumResult {
    cplx I;                    // continuum lattice sum I_d(k)
    double chi;                // 1 + Re(I)
    double shift;              // Im(I)/2
    double k;                  // wavenumber, units k0
    double validity_halfwidth; // window |k - k0| <= pi/(a b_d N^{1/d})
    bool closed_form = true;   // false when the quadrature fallback was used
    bool in_window = true;     // false outside the validity window (advisory)
};

// Continuum lattice sum I_d(k) = (2 c_d / (k0a)^d) (k0/k)^{(d-1)/2} A J_d(k)
// with J_d = J_cc + i*eps*J_sc (d = 1,2; cosine radial kernel) or
// J_cs + i*eps*J_ss (d = 3; sinc kernel contributes sin(k r)/k r).
ContinuumResult continuum_I(const AnalyticContext& ctx, double k);

// Oscillatory trig moments over eta in [k0a, k0a*N'] with weight eta^beta;
// first letter is the kernel carrying e^{i*eps*eta}, second the plane-wave
// factor at k/k0 * eta.
enum class JKind { cc, sc, cs, ss };

// Closed-form evaluation via the complex incomplete gamma function (general
// beta), explicit sinc/cos expressions (beta = 0), or a power series near
// the resonance where the gamma route cancels.  J_cs routes through the
// exact k <-> k0 exchange identity
//   J_cs(kappa; A, B) = kappa^{-(beta+1)} J_sc(1/kappa; kappa A, kappa B).
// Outside beta in (-1, 2] the quadrature oracle is used and *used_quadrature
// (if given) is set.
double closed_form_J(JKind kind, const AnalyticContext& ctx, double k,
                     bool* used_quadrature = nullptr);

// Direct adaptive quadrature of the defining integral; the oracle against
// which every closed form is validated.
double quadrature_J(JKind kind, const AnalyticContext& ctx, double k,
                    const QuadratureSpec& spec = {});

// Least-squares slope of log(chi_k0 - 1) against log N from exact lattice
// sums at k = k0.  Each N must be a perfect even-sided m^d; at least three
// values spanning at least one decade.  Expected slope ((d+1)/2 - alpha)/d.
double scaling_exponent_check(int d, double alpha, const std::vector<long>& N_list,
                              double k0a = 3.0, int epsilon = +1);

namespace detail {

// C(s) = int_A^B eta^beta cos(s eta) d eta  (even in s)
// S(s) = int_A^B eta^beta sin(s eta) d eta  (odd in s)
// Dispatch: Maclaurin series in s for |s|*B < 0.1, explicit trig forms at
// beta = 0, incomplete-gamma route otherwise.
double cosine_moment(double s, double beta, double A, double B);
double sine_moment(double s, double beta, double A, double B);

// Gamma route forced regardless of beta (still series below the cancellation
// threshold); exposed so the beta = 0 identities can be checked against an
// algorithmically independent path.
double cosine_moment_gamma(double s, double beta, double A, double B);
double sine_moment_gamma(double s, double beta, double A, double B);

} // namespace detail

} // namespace supra
