#include "supra/analytics.hpp"

#include "supra/spectrum.hpp"

#include <cmath>
#include <string>

namespace supra {

namespace {

// Below |s|*B the trig/gamma expressions lose all significance to
// cancellation; a short Maclaurin expansion in s is exact to rounding there
// (12 terms leave the tail below (0.1)^24/24!).
constexpr double series_threshold = 0.1;

double moment_series_cos(double s, double beta, double A, double B) {
    double total = 0.0;
    double coeff = 1.0; // (-1)^j s^{2j} / (2j)!
    for (int j = 0; j < 12; ++j) {
        const double p = beta + 2.0 * j + 1.0;
        total += coeff * (std::pow(B, p) - std::pow(A, p)) / p;
        coeff *= -s * s / static_cast<double>((2 * j + 1) * (2 * j + 2));
    }
    return total;
}

double moment_series_sin(double s, double beta, double A, double B) {
    double total = 0.0;
    double coeff = s; // (-1)^j s^{2j+1} / (2j+1)!
    for (int j = 0; j < 12; ++j) {
        const double p = beta + 2.0 * j + 2.0;
        total += coeff * (std::pow(B, p) - std::pow(A, p)) / p;
        coeff *= -s * s / static_cast<double>((2 * j + 2) * (2 * j + 3));
    }
    return total;
}

// int_A^B eta^beta e^{i s eta} d eta for s > 0, via t = -i s eta: the path
// stays on the negative imaginary axis, clear of the principal-branch cut,
// so no sign factors are needed for either sign of the detuning.
cplx phase_moment(double s, double beta, double A, double B) {
    const cplx mis(0.0, -s);
    return std::pow(mis, -beta - 1.0) * (upper_incomplete_gamma(1.0 + beta, mis * A) -
                                         upper_incomplete_gamma(1.0 + beta, mis * B));
}

void check_moment_domain(double beta, double A, double B) {
    if (!(A > 0.0) || !(B > A) || !std::isfinite(B))
        throw validation_error(errc::bad_grid, "moment limits require 0 < A < B");
    if (!(beta > -1.0) || !(beta <= 2.0))
        throw validation_error(errc::gamma_domain, "moment weight requires beta in (-1, 2]");
}

} // namespace

namespace detail {

double cosine_moment(double s, double beta, double A, double B) {
    check_moment_domain(beta, A, B);
    const double sa = std::abs(s); // even in s
    if (sa * B < series_threshold) return moment_series_cos(sa, beta, A, B);
    if (beta == 0.0) return B * sinc(sa * B) - A * sinc(sa * A);
    return phase_moment(sa, beta, A, B).real();
}

double sine_moment(double s, double beta, double A, double B) {
    check_moment_domain(beta, A, B);
    const double sa = std::abs(s);
    if (sa * B < series_threshold) return moment_series_sin(s, beta, A, B); // odd in s
    const double sign = (s >= 0.0) ? 1.0 : -1.0;
    if (beta == 0.0) return sign * (std::cos(sa * A) - std::cos(sa * B)) / sa;
    return sign * phase_moment(sa, beta, A, B).imag();
}

double cosine_moment_gamma(double s, double beta, double A, double B) {
    check_moment_domain(beta, A, B);
    const double sa = std::abs(s);
    if (sa * B < series_threshold) return moment_series_cos(sa, beta, A, B);
    return phase_moment(sa, beta, A, B).real();
}

double sine_moment_gamma(double s, double beta, double A, double B) {
    check_moment_domain(beta, A, B);
    const double sa = std::abs(s);
    if (sa * B < series_threshold) return moment_series_sin(s, beta, A, B);
    const double sign = (s >= 0.0) ? 1.0 : -1.0;
    return sign * phase_moment(sa, beta, A, B).imag();
}

} // namespace detail

double AnalyticContext::beta() const { return 0.5 * (d - 1) - alpha; }

double AnalyticContext::Nprime() const {
    return dimension_constants(d, theta).b * std::pow(N, 1.0 / d);
}

void AnalyticContext::validate() const {
    if (d < 1 || d > 3)
        throw validation_error(errc::bad_dimension, "dimension must be 1, 2 or 3");
    if (!(k0a > 1.0))
        throw validation_error(errc::lattice_not_extended, "extended sample requires k0*a > 1");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw validation_error(errc::bad_alpha, "alpha must be finite and >= 0");
    if (epsilon != 1 && epsilon != -1)
        throw validation_error(errc::bad_epsilon, "epsilon must be +1 or -1");
    if (!(N >= 1.0) || !std::isfinite(N))
        throw validation_error(errc::bad_atom_count, "atom count must be finite and >= 1");
    if (!(std::abs(A) > 0.0) || !std::isfinite(std::abs(A)))
        throw validation_error(errc::bad_strength, "coupling strength must be finite and nonzero");
    if (d == 3 && !theta)
        throw validation_error(errc::bad_wavevector, "d = 3 requires the polar angle theta");
    if (theta && !(*theta >= 0.0 && *theta <= pi))
        throw validation_error(errc::bad_wavevector, "theta must lie in [0, pi]");
}

AnalyticContext AnalyticContext::from(const LatticeSpec& spec, const CouplingModel& model,
                                      std::optional<double> theta) {
    spec.validate();
    model.validate();
    if (spec.d != model.d)
        throw validation_error(errc::bad_dimension,
                               "lattice and coupling model disagree on the dimension");
    AnalyticContext ctx;
    ctx.d = spec.d;
    ctx.alpha = model.alpha;
    ctx.epsilon = model.epsilon;
    ctx.A = (model.custom && model.d == 2) ? cplx(std::abs(model.A), 0.0) : model.A;
    ctx.k0a = spec.k0a;
    ctx.N = static_cast<double>(spec.N());
    ctx.theta = theta;
    ctx.validate();
    return ctx;
}

bool superradiance_constraint(int d, double alpha) {
    if (d < 1 || d > 3)
        throw validation_error(errc::bad_dimension, "dimension must be 1, 2 or 3");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw validation_error(errc::bad_alpha, "alpha must be finite and >= 0");
    return alpha < 0.5 * (d + 1);
}

double chi_max(const AnalyticContext& ctx) {
    ctx.validate();
    if (!superradiance_constraint(ctx.d, ctx.alpha))
        throw validation_error(errc::constraint_violated,
                               "no superradiant peak: alpha >= (d+1)/2");
    const DimensionConstants dc = dimension_constants(ctx.d, ctx.theta);
    const double e = 0.5 * (ctx.d + 1) - ctx.alpha;
    return 1.0 + std::abs(ctx.A) * dc.c * std::pow(dc.b, e) / e *
                     std::pow(ctx.k0a, 0.5 * (1 - ctx.d) - ctx.alpha) *
                     std::pow(std::pow(ctx.N, 1.0 / ctx.d), e);
}

double chi_max_parameterized(const AnalyticContext& ctx, ChiForm form) {
    ctx.validate();
    const double Ld = L_d(ctx.d, ctx.alpha, ctx.A, ctx.theta);
    const double lambda0 = 2.0 * pi; // wavelength in units 1/k0
    const double V = ctx.N * std::pow(ctx.k0a, ctx.d);
    const double rho = ctx.N / V;
    const double p = 0.5 * (ctx.d - 1) + ctx.alpha;
    switch (form) {
    case ChiForm::count_volume:
        return 1.0 + Ld * std::pow(lambda0 / std::pow(V, 1.0 / ctx.d), p) * ctx.N;
    case ChiForm::volume_density:
        return 1.0 + Ld * std::pow(lambda0 / std::pow(V, 1.0 / ctx.d), p) * V * rho;
    case ChiForm::count_density:
        return 1.0 + Ld * std::pow(lambda0 * std::pow(rho, 1.0 / ctx.d), p) *
                         std::pow(std::pow(ctx.N, 1.0 / ctx.d), 0.5 * (ctx.d + 1) - ctx.alpha);
    }
    throw validation_error(errc::bad_config, "unknown chi_max parameterization");
}

double L_d(int d, double alpha, cplx A, std::optional<double> theta) {
    if (!superradiance_constraint(d, alpha))
        throw validation_error(errc::constraint_violated,
                               "no superradiant peak: alpha >= (d+1)/2");
    const DimensionConstants dc = dimension_constants(d, theta);
    const double e = 0.5 * (d + 1) - alpha;
    return 2.0 * std::pow(dc.b, e) * dc.c / (d + 1 - 2.0 * alpha) * std::abs(A) /
           std::pow(2.0 * pi, 0.5 * (d - 1) + alpha);
}

double chi_of_xi(double xi, double chi_max) { return 1.0 + (chi_max - 1.0) * sinc(xi); }

double shift_of_xi(double xi, double chi_max, int epsilon) {
    if (epsilon != 1 && epsilon != -1)
        throw validation_error(errc::bad_epsilon, "epsilon must be +1 or -1");
    if (xi == 0.0) return 0.0;
    // (cos xi - 1)/(2 xi) = -sin^2(xi/2)/xi, free of cancellation near xi = 0
    const double sh = std::sin(0.5 * xi);
    return -epsilon * (chi_max - 1.0) * sh * sh / xi;
}

double find_offset_h() {
    // xi sin xi + cos xi - 1 changes sign exactly once on (pi/2, pi)
    auto g = [](double x) { return x * std::sin(x) + std::cos(x) - 1.0; };
    double lo = 0.5 * pi, hi = pi;
    for (int i = 0; i < 200 && (hi - lo) > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double closed_form_J(JKind kind, const AnalyticContext& ctx, double k,
                     bool* used_quadrature) {
    ctx.validate();
    if (!(k > 0.0) || !std::isfinite(k))
        throw validation_error(errc::bad_wavevector, "wavenumber must be positive");
    if (used_quadrature) *used_quadrature = false;

    const double beta = ctx.beta();
    if (!(beta > -1.0) || !(beta <= 2.0)) {
        if (used_quadrature) *used_quadrature = true;
        return quadrature_J(kind, ctx, k);
    }

    const double A = ctx.k0a;
    const double B = ctx.k0a * ctx.Nprime();
    if (!(B > A))
        throw validation_error(errc::bad_atom_count,
                               "continuum integral needs N' = b_d N^(1/d) > 1");
    const double kappa = k; // k0 = 1

    switch (kind) {
    case JKind::cc:
        return 0.5 * (detail::cosine_moment(kappa - 1.0, beta, A, B) +
                      detail::cosine_moment(kappa + 1.0, beta, A, B));
    case JKind::ss:
        return 0.5 * (detail::cosine_moment(kappa - 1.0, beta, A, B) -
                      detail::cosine_moment(kappa + 1.0, beta, A, B));
    case JKind::sc:
        return 0.5 * (detail::sine_moment(kappa + 1.0, beta, A, B) -
                      detail::sine_moment(kappa - 1.0, beta, A, B));
    case JKind::cs: {
        // substituting u = kappa*eta swaps the roles of k and k0 exactly:
        // J_cs(kappa; A, B) = kappa^{-(beta+1)} J_sc(1/kappa; kappa A, kappa B)
        const double kp = 1.0 / kappa;
        const double As = kappa * A, Bs = kappa * B;
        const double swapped = 0.5 * (detail::sine_moment(kp + 1.0, beta, As, Bs) -
                                      detail::sine_moment(kp - 1.0, beta, As, Bs));
        return std::pow(kappa, -(beta + 1.0)) * swapped;
    }
    }
    throw validation_error(errc::bad_config, "unknown J kind");
}

double quadrature_J(JKind kind, const AnalyticContext& ctx, double k,
                    const QuadratureSpec& spec) {
    ctx.validate();
    if (!(k > 0.0) || !std::isfinite(k))
        throw validation_error(errc::bad_wavevector, "wavenumber must be positive");
    const double A = ctx.k0a;
    const double B = ctx.k0a * ctx.Nprime();
    if (!(B > A))
        throw validation_error(errc::bad_atom_count,
                               "continuum integral needs N' = b_d N^(1/d) > 1");

    const double beta = ctx.beta();
    const bool first_cos = (kind == JKind::cc || kind == JKind::cs);
    const bool second_cos = (kind == JKind::cc || kind == JKind::sc);
    QuadratureSpec qs = spec;
    qs.omega_max = 1.0 + k; // fastest phase in the product kernel
    const double kappa = k;
    auto kernel = [beta, kappa, first_cos, second_cos](double eta) -> cplx {
        const double g1 = first_cos ? std::cos(eta) : std::sin(eta);
        const double g2 = second_cos ? std::cos(kappa * eta) : std::sin(kappa * eta);
        return {g1 * g2 * std::pow(eta, beta), 0.0};
    };
    return integrate_oscillatory(kernel, A, B, qs).real();
}

ContinuumResult continuum_I(const AnalyticContext& ctx, double k) {
    ctx.validate();
    if (!superradiance_constraint(ctx.d, ctx.alpha))
        throw validation_error(errc::constraint_violated,
                               "no superradiant peak: alpha >= (d+1)/2");
    if (!(k > 0.0) || !std::isfinite(k))
        throw validation_error(errc::bad_wavevector, "wavenumber must be positive");

    const DimensionConstants dc = dimension_constants(ctx.d, ctx.theta);
    bool q1 = false, q2 = false;
    double Jre, Jim;
    if (ctx.d <= 2) { // radial kernel cos: e^{i eps eta} = cos + i eps sin
        Jre = closed_form_J(JKind::cc, ctx, k, &q1);
        Jim = closed_form_J(JKind::sc, ctx, k, &q2);
    } else { // radial kernel sin(eta)/..., plane-wave factor sin(k eta)
        Jre = closed_form_J(JKind::cs, ctx, k, &q1);
        Jim = closed_form_J(JKind::ss, ctx, k, &q2);
    }
    const cplx Jd(Jre, ctx.epsilon * Jim);
    const double pref = 2.0 * dc.c / std::pow(ctx.k0a, ctx.d) *
                        std::pow(1.0 / k, 0.5 * (ctx.d - 1));

    ContinuumResult res;
    res.I = pref * ctx.A * Jd;
    res.chi = 1.0 + res.I.real();
    res.shift = 0.5 * res.I.imag();
    res.k = k;
    res.validity_halfwidth = pi / (ctx.k0a * dc.b * std::pow(ctx.N, 1.0 / ctx.d));
    res.closed_form = !(q1 || q2);
    res.in_window = std::abs(k - 1.0) <= res.validity_halfwidth * (1.0 + 1e-12);
    return res;
}

double scaling_exponent_check(int d, double alpha, const std::vector<long>& N_list,
                              double k0a, int epsilon) {
    if (!superradiance_constraint(d, alpha))
        throw validation_error(errc::constraint_violated,
                               "no superradiant peak: alpha >= (d+1)/2");
    if (N_list.size() < 3)
        throw validation_error(errc::bad_grid, "scaling fit needs at least 3 sample sizes");

    std::vector<int> sides;
    long n_min = N_list.front(), n_max = N_list.front();
    for (long N : N_list) {
        n_min = std::min(n_min, N);
        n_max = std::max(n_max, N);
        long m = std::lround(std::pow(static_cast<double>(N), 1.0 / d));
        bool found = false;
        for (long c = m - 1; c <= m + 1 && !found; ++c) {
            long p = 1;
            for (int i = 0; i < d; ++i) p *= c;
            if (c > 0 && p == N) {
                m = c;
                found = true;
            }
        }
        if (!found || m % 2 != 0)
            throw validation_error(errc::bad_atom_count,
                                   "each N must be m^d with even side m");
        sides.push_back(static_cast<int>(m));
    }
    if (!(static_cast<double>(n_max) >= 10.0 * static_cast<double>(n_min)))
        throw validation_error(errc::bad_grid, "sample sizes must span at least one decade");

    const CouplingModel model = (d == 2) ? compensated_coupling_2d(1.0, alpha, epsilon)
                                         : standard_coupling(d, 1.0, alpha, epsilon);
    Wavevector kv;
    kv.k = 1.0;
    kv.theta = pi / 2.0;
    kv.phi = matched_scan_azimuth(d);

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(N_list.size());
    for (size_t i = 0; i < N_list.size(); ++i) {
        LatticeSpec spec;
        spec.d = d;
        spec.k0a = k0a;
        spec.m = sides[i];
        const auto lattice = build_lattice(spec);
        const DispersionPoint p = lattice_sum(lattice, model, kv);
        if (!(p.chi > 1.0))
            throw numerical_error("scaling fit: lattice sum gave chi <= 1 at k = k0");
        const double x = std::log(static_cast<double>(N_list[i]));
        const double y = std::log(p.chi - 1.0);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace supra
