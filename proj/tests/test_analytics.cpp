#include <doctest.h>

#include <cmath>
#include <random>

#include "supra/analytics.hpp"
#include "supra/spectrum.hpp"

using namespace supra;

namespace {

AnalyticContext chain_ctx(double N, double alpha = 0.0, double k0a = 3.0) {
    AnalyticContext ctx;
    ctx.d = 1;
    ctx.alpha = alpha;
    ctx.A = cplx(1.0, 0.0);
    ctx.k0a = k0a;
    ctx.N = N;
    return ctx;
}

} // namespace

TEST_SUITE("analytics") {

TEST_CASE("context bookkeeping") {
    auto ctx = chain_ctx(400.0, 0.25);
    CHECK(ctx.beta() == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(ctx.Nprime() == doctest::Approx(200.0).epsilon(1e-15));

    ctx.d = 2;
    ctx.N = 900.0;
    CHECK(ctx.beta() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(ctx.Nprime() == doctest::Approx(30.0 / std::sqrt(pi)).epsilon(1e-14));

    ctx.d = 3;
    CHECK_THROWS_AS(ctx.validate(), validation_error); // theta required
    ctx.theta = pi / 3.0;
    CHECK_NOTHROW(ctx.validate());

    ctx = chain_ctx(100.0);
    ctx.k0a = 0.9;
    try {
        ctx.validate();
        FAIL("expected a throw");
    } catch (const validation_error& e) {
        CHECK(e.code() == errc::lattice_not_extended);
    }
}

TEST_CASE("context from lattice and coupling") {
    LatticeSpec spec;
    spec.d = 2;
    spec.m = 10;
    spec.k0a = 2.0;
    const auto model = compensated_coupling_2d(1.3, 0.5, -1);
    const auto ctx = AnalyticContext::from(spec, model);
    CHECK(ctx.d == 2);
    CHECK(ctx.N == 100.0);
    CHECK(ctx.epsilon == -1);
    // the absorbed propagator phase is stripped again: continuum strength |A|
    CHECK(ctx.A.real() == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(ctx.A.imag() == 0.0);

    LatticeSpec wrong = spec;
    wrong.d = 1;
    CHECK_THROWS_AS(AnalyticContext::from(wrong, model), validation_error);
}

TEST_CASE("superradiance constraint boundary") {
    CHECK(superradiance_constraint(1, 0.0));
    CHECK(superradiance_constraint(1, 0.999));
    CHECK_FALSE(superradiance_constraint(1, 1.0));
    CHECK(superradiance_constraint(2, 1.49));
    CHECK_FALSE(superradiance_constraint(2, 1.5));
    CHECK(superradiance_constraint(3, 1.0));
    CHECK_FALSE(superradiance_constraint(3, 2.0));
    CHECK_THROWS_AS(superradiance_constraint(4, 0.0), validation_error);
}

TEST_CASE("peak enhancement on the chain") {
    // d = 1, alpha = 0: chi_max = 1 + N/2, independent of k0a
    CHECK(chi_max(chain_ctx(2000.0)) == doctest::Approx(1001.0).epsilon(1e-13));
    CHECK(chi_max(chain_ctx(2000.0, 0.0, 5.5)) == doctest::Approx(1001.0).epsilon(1e-13));
    // strength scales linearly into chi_max - 1
    auto ctx = chain_ctx(2000.0);
    ctx.A = cplx(2.0, 0.0);
    CHECK(chi_max(ctx) == doctest::Approx(2001.0).epsilon(1e-13));

    ctx = chain_ctx(100.0, 1.0);
    try {
        chi_max(ctx);
        FAIL("expected a throw");
    } catch (const validation_error& e) {
        CHECK(e.code() == errc::constraint_violated);
    }
}

TEST_CASE("chi_max parameterizations agree") {
    std::mt19937 rng(7011);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        AnalyticContext ctx;
        ctx.d = 1 + static_cast<int>(u(rng) * 3.0);
        if (ctx.d > 3) ctx.d = 3;
        ctx.alpha = u(rng) * (0.5 * (ctx.d + 1) - 0.05);
        ctx.epsilon = u(rng) < 0.5 ? +1 : -1;
        ctx.A = (ctx.d == 3) ? cplx(0.0, -(0.5 + u(rng))) : cplx(0.5 + u(rng), 0.0);
        ctx.k0a = 1.5 + 4.0 * u(rng);
        ctx.N = std::pow(10.0, 2.0 + 4.0 * u(rng));
        if (ctx.d == 3) ctx.theta = 0.2 + 2.7 * u(rng);

        const double direct = chi_max(ctx);
        for (ChiForm form : {ChiForm::count_volume, ChiForm::volume_density,
                             ChiForm::count_density}) {
            const double alt = chi_max_parameterized(ctx, form);
            CHECK(std::abs(alt - direct) <= 1e-12 * direct);
        }
    }
}

TEST_CASE("scaling prefactor") {
    CHECK(L_d(1, 0.0, cplx(1.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(L_d(1, 0.0, cplx(3.0, 0.0)) == doctest::Approx(1.5).epsilon(1e-15));
    // the d = 3 angular weight carries the dipole pattern; it dies on the axis
    CHECK(L_d(3, 0.5, cplx(0.0, -1.0), 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(L_d(3, 0.5, cplx(0.0, -1.0), pi / 2.0) > 0.0);
    CHECK_THROWS_AS(L_d(1, 1.2, cplx(1.0, 0.0)), validation_error);
}

TEST_CASE("universal curves") {
    CHECK(chi_of_xi(0.0, 501.0) == 501.0);
    CHECK(shift_of_xi(0.0, 501.0, +1) == 0.0);
    // chi - 1 and the shift trace a circle: (xi*chihat)^2 + (1 + 2 xi dhat)^2 = 1
    for (int eps : {+1, -1}) {
        for (double xi = -9.0; xi <= 9.0; xi += 0.375) {
            if (xi == 0.0) continue;
            const double chihat = (chi_of_xi(xi, 2.0) - 1.0);
            const double dhat = shift_of_xi(xi, 2.0, eps);
            const double circ = xi * chihat * xi * chihat +
                                (1.0 + 2.0 * eps * xi * dhat) * (1.0 + 2.0 * eps * xi * dhat);
            CHECK(circ == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // epsilon flips the sign of the shift curve
    CHECK(shift_of_xi(1.7, 10.0, +1) == doctest::Approx(-shift_of_xi(1.7, 10.0, -1)));
    // the shift is odd in xi
    CHECK(shift_of_xi(-1.7, 10.0, +1) == doctest::Approx(-shift_of_xi(1.7, 10.0, +1)));
    CHECK_THROWS_AS(shift_of_xi(1.0, 2.0, 0), validation_error);
}

TEST_CASE("shift extremum offset") {
    const double h = find_offset_h();
    CHECK(h > 0.5 * pi);
    CHECK(h < pi);
    CHECK(std::abs(std::tan(0.5 * h) - h) < 1e-10);
    CHECK(std::abs(h * std::sin(h) + std::cos(h) - 1.0) < 1e-12);
    CHECK(h == doctest::Approx(2.3311).epsilon(1e-4));
    // and it is where the universal shift curve is extremal
    const double step = 1e-5;
    const double d0 = std::abs(shift_of_xi(h, 2.0, +1));
    CHECK(d0 >= std::abs(shift_of_xi(h - step, 2.0, +1)));
    CHECK(d0 >= std::abs(shift_of_xi(h + step, 2.0, +1)));
}

TEST_CASE("continuum sum at resonance reproduces the peak enhancement") {
    const auto ctx = chain_ctx(1.0e6);
    const auto res = continuum_I(ctx, 1.0);
    const double peak = chi_max(ctx) - 1.0;
    CHECK(std::abs((res.chi - 1.0) - peak) <= 1e-5 * peak);
    CHECK(std::abs(res.shift) <= 1e-6 * peak);
    CHECK(res.closed_form);
    CHECK(res.in_window);
    CHECK(res.validity_halfwidth == doctest::Approx(pi / (3.0 * 0.5 * 1.0e6)).epsilon(1e-13));
    // window flag trips outside |k - k0| <= halfwidth
    CHECK_FALSE(continuum_I(ctx, 1.0 + 1e-5).in_window);
    CHECK(continuum_I(ctx, 1.0 + 1e-6).in_window);
}

TEST_CASE("continuum curve tracks the exact lattice sum on the chain") {
    LatticeSpec spec;
    spec.d = 1;
    spec.m = 2000;
    spec.k0a = 3.0;
    const auto model = standard_coupling(1, 1.0, 0.0);
    const auto lattice = build_lattice(spec);
    const auto ctx = AnalyticContext::from(spec, model);
    const double peak = chi_max(ctx) - 1.0;
    const double scale = spec.k0a * 0.5 * spec.m; // xi = (k - 1) * k0a * b1 * N

    for (int i = 0; i <= 40; ++i) {
        const double xi = -pi + 2.0 * pi * i / 40.0;
        const double k = 1.0 + xi / scale;
        Wavevector kv;
        kv.k = k;
        const auto exact = lattice_sum(lattice, model, kv);
        const auto cont = continuum_I(ctx, k);
        CHECK(std::abs((cont.chi - 1.0) - (exact.chi - 1.0)) <= 0.02 * peak);
        CHECK(std::abs(cont.shift - exact.shift) <= 0.02 * peak);
    }
}

TEST_CASE("closed forms match the quadrature oracle at spot parameters") {
    struct Spot {
        int d;
        double alpha;
        double N;
        double kappa;
    };
    const Spot spots[] = {
        {1, 0.0, 900.0, 0.95},  {1, 0.5, 900.0, 1.0},   {1, 0.5, 900.0, 1.07},
        {2, 0.0, 4096.0, 0.98}, {2, 1.0, 4096.0, 1.02}, {3, 0.0, 8000.0, 1.05},
        {3, 1.0, 1728.0, 0.9},
    };
    for (const auto& sp : spots) {
        AnalyticContext ctx;
        ctx.d = sp.d;
        ctx.alpha = sp.alpha;
        ctx.A = (sp.d == 3) ? cplx(0.0, -1.0) : cplx(1.0, 0.0);
        ctx.k0a = 3.0;
        ctx.N = sp.N;
        if (sp.d == 3) ctx.theta = pi / 2.0;
        for (JKind kind : {JKind::cc, JKind::sc, JKind::cs, JKind::ss}) {
            bool used_quad = true;
            const double cf = closed_form_J(kind, ctx, sp.kappa, &used_quad);
            CHECK_FALSE(used_quad);
            const double oracle = quadrature_J(kind, ctx, sp.kappa);
            CHECK(std::abs(cf - oracle) <= 1e-8 * std::max(1.0, std::abs(oracle)));
        }
    }
}

TEST_CASE("exchange route for the cs integral is exact") {
    // cos(eta) sin(kappa eta) = [sin((kappa+1) eta) + sin((kappa-1) eta)] / 2,
    // so the substitution-based route must agree with the direct splitting.
    AnalyticContext ctx;
    ctx.d = 3;
    ctx.alpha = 0.0; // beta = 1
    ctx.A = cplx(0.0, -1.0);
    ctx.k0a = 3.0;
    ctx.N = 8000.0;
    ctx.theta = pi / 2.0;
    const double A = ctx.k0a, B = ctx.k0a * ctx.Nprime();
    for (double kappa : {0.9, 0.99, 1.0, 1.01, 1.2}) {
        const double direct = 0.5 * (detail::sine_moment(kappa + 1.0, 1.0, A, B) +
                                     detail::sine_moment(kappa - 1.0, 1.0, A, B));
        const double routed = closed_form_J(JKind::cs, ctx, kappa);
        CHECK(std::abs(routed - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("quadrature fallback outside the gamma domain") {
    auto ctx = chain_ctx(100.0, 2.5); // beta = -2.5, outside (-1, 2]
    bool used_quad = false;
    const double v = closed_form_J(JKind::cc, ctx, 1.1, &used_quad);
    CHECK(used_quad);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(quadrature_J(JKind::cc, ctx, 1.1)).epsilon(1e-12));
}

TEST_CASE("trig moments: domain checks and small-phase series") {
    CHECK_THROWS_AS(detail::cosine_moment(0.5, -1.0, 3.0, 9.0), validation_error);
    CHECK_THROWS_AS(detail::cosine_moment(0.5, 2.5, 3.0, 9.0), validation_error);
    try {
        detail::cosine_moment(0.5, 0.5, 3.0, 3.0);
        FAIL("expected a throw");
    } catch (const validation_error& e) {
        CHECK(e.code() == errc::bad_grid);
    }
    CHECK_THROWS_AS(detail::sine_moment(0.5, 0.5, 0.0, 9.0), validation_error);

    // tiny s goes through the Maclaurin series; compare to direct quadrature
    const double s = 1e-5, beta = 0.5, A = 3.0, B = 1500.0;
    QuadratureSpec spec;
    spec.omega_max = 1.0; // essentially non-oscillatory
    const double qc = integrate_oscillatory(
                          [&](double eta) {
                              return cplx(std::pow(eta, beta) * std::cos(s * eta), 0.0);
                          },
                          A, B, spec)
                          .real();
    const double qs = integrate_oscillatory(
                          [&](double eta) {
                              return cplx(std::pow(eta, beta) * std::sin(s * eta), 0.0);
                          },
                          A, B, spec)
                          .real();
    CHECK(detail::cosine_moment(s, beta, A, B) == doctest::Approx(qc).epsilon(1e-9));
    CHECK(detail::sine_moment(s, beta, A, B) == doctest::Approx(qs).epsilon(1e-9));
    // parity
    CHECK(detail::cosine_moment(-s, beta, A, B) == detail::cosine_moment(s, beta, A, B));
    CHECK(detail::sine_moment(-s, beta, A, B) == -detail::sine_moment(s, beta, A, B));
    const double s2 = 0.7;
    CHECK(detail::cosine_moment(-s2, beta, A, B) == detail::cosine_moment(s2, beta, A, B));
    CHECK(detail::sine_moment(-s2, beta, A, B) == -detail::sine_moment(s2, beta, A, B));
}

TEST_CASE("explicit trig forms at beta = 0 match the gamma route") {
    const double A = 3.0, B = 900.0;
    for (double s : {0.02, 0.5, 1.3, 2.0}) {
        CHECK(std::abs(detail::cosine_moment(s, 0.0, A, B) -
                       detail::cosine_moment_gamma(s, 0.0, A, B)) <= 1e-10);
        CHECK(std::abs(detail::sine_moment(s, 0.0, A, B) -
                       detail::sine_moment_gamma(s, 0.0, A, B)) <= 1e-10);
    }
}

TEST_CASE("scaling fit input validation") {
    CHECK_THROWS_AS(scaling_exponent_check(1, 0.0, {500, 2000}), validation_error);
    try {
        scaling_exponent_check(1, 0.0, {500, 2000, 8001});
        FAIL("expected a throw");
    } catch (const validation_error& e) {
        CHECK(e.code() == errc::bad_atom_count); // 8001 is not an even-sided chain
    }
    try {
        scaling_exponent_check(2, 0.0, {16, 36, 64});
        FAIL("expected a throw");
    } catch (const validation_error& e) {
        CHECK(e.code() == errc::bad_grid); // spans less than a decade
    }
    CHECK_THROWS_AS(scaling_exponent_check(1, 1.5, {100, 400, 1200}), validation_error);
}

TEST_CASE("scaling fit smoke run on small chains") {
    const double slope = scaling_exponent_check(1, 0.0, {100, 400, 1200});
    CHECK(slope == doctest::Approx(1.0).epsilon(0.05));
}

} // TEST_SUITE
