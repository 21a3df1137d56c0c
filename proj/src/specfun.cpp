#include "supra/specfun.hpp"

#include <cmath>
#include <queue>
#include <sstream>

namespace supra {

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

double bessel_j0(double x) {
    if (!(x >= 0.0))
        throw validation_error(errc::bessel_domain, "bessel_j0 requires x >= 0");
    return std::cyl_bessel_j(0.0, x);
}

double bessel_j0_series(double x) {
    const double q = -0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

namespace {

// Gamma(s, z) = Gamma(s) - z^s e^{-z} sum_n z^n / (s (s+1) ... (s+n)).
cplx gamma_series(double s, cplx z) {
    cplx c = 1.0 / s;
    cplx sum = c;
    for (int n = 1; n < 400; ++n) {
        c *= z / (s + n);
        sum += c;
        if (std::abs(c) < 1e-17 * std::abs(sum))
            return std::tgamma(s) - std::pow(z, cplx(s)) * std::exp(-z) * sum;
    }
    throw numerical_error("incomplete-gamma series failed to converge");
}

// Gamma(s, z) = e^{-z} z^s / (z + 1 - s - 1(1-s)/(z + 3 - s - 2(2-s)/(...)))
// evaluated with the modified Lentz algorithm.
cplx gamma_continued_fraction(double s, cplx z) {
    constexpr double tiny = 1e-300;
    cplx b = z + 1.0 - s;
    cplx c = 1.0 / tiny;
    cplx d = std::abs(b) > tiny ? 1.0 / b : cplx(1.0 / tiny);
    cplx h = d;
    for (int i = 1; i < 20000; ++i) {
        const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const cplx delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return std::exp(-z) * std::pow(z, cplx(s)) * h;
    }
    throw numerical_error("incomplete-gamma continued fraction failed to converge");
}

} // namespace

cplx upper_incomplete_gamma(double s, cplx z) {
    if (!(s > 0.0) || !(s <= 3.0))
        throw validation_error(errc::gamma_domain,
                               "upper_incomplete_gamma supports s in (0, 3]");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw validation_error(errc::gamma_domain, "z must be finite");
    if (z == cplx(0.0)) return std::tgamma(s);
    if (std::abs(z) <= 4.0) return gamma_series(s, z);
    return gamma_continued_fraction(s, z);
}

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw validation_error(errc::bad_tolerance, "quadrature tolerances must be positive");
    if (max_subdivisions < 1)
        throw validation_error(errc::bad_tolerance, "subdivision budget must be positive");
    if (panel_rule != 15)
        throw validation_error(errc::bad_tolerance, "only the Gauss-Kronrod (7,15) rule is provided");
    if (!(omega_max > 0.0) || !std::isfinite(omega_max))
        throw validation_error(errc::bad_tolerance, "omega_max must be positive and finite");
}

namespace {

// Nodes and weights of the Gauss(7)/Kronrod(15) pair on [-1, 1]; the Gauss
// nodes sit at the odd Kronrod indices.
constexpr double kron_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kron_w[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cplx value;
    double err;
};

Panel kronrod_panel(const std::function<cplx(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const cplx fc = f(mid);
    cplx kron = kron_w[7] * fc;
    cplx gauss = gauss_w[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const cplx lo = f(mid - half * kron_x[j]);
        const cplx hi = f(mid + half * kron_x[j]);
        kron += kron_w[j] * (lo + hi);
        if (j % 2 == 1) gauss += gauss_w[(j - 1) / 2] * (lo + hi);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = kron * half;
    p.err = std::abs(kron - gauss) * half;
    return p;
}

} // namespace

cplx integrate_oscillatory(const std::function<cplx(double)>& kernel, double lower,
                           double upper, const QuadratureSpec& spec) {
    spec.validate();
    if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper))
        throw validation_error(errc::bad_grid, "integration requires finite lower < upper");

    // Starting panels no wider than half an oscillation period.
    const double width = upper - lower;
    long n0 = static_cast<long>(std::ceil(width * spec.omega_max / pi));
    n0 = std::max(n0, 8L);
    n0 = std::min(n0, 1L << 20);

    auto cmp = [](const Panel& p, const Panel& q) { return p.err < q.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);

    cplx total = 0.0;
    double total_err = 0.0;
    for (long i = 0; i < n0; ++i) {
        const double a = lower + width * static_cast<double>(i) / static_cast<double>(n0);
        const double b = lower + width * static_cast<double>(i + 1) / static_cast<double>(n0);
        Panel p = kronrod_panel(kernel, a, b);
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }

    long splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (splits >= spec.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature budget of " << spec.max_subdivisions
                << " subdivisions exhausted (error bound " << total_err << ")";
            throw quadrature_error(msg.str(), total, total_err);
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw numerical_error("quadrature panel underflow before reaching tolerance");
        Panel left = kronrod_panel(kernel, worst.a, mid);
        Panel right = kronrod_panel(kernel, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
        throw numerical_error("quadrature produced a non-finite value");
    return total;
}

} // namespace supra
