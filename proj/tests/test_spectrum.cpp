#include <doctest.h>

#include <cmath>
#include <random>

#include "supra/spectrum.hpp"

using namespace supra;

TEST_SUITE("spectrum") {

TEST_CASE("two-atom splitting in closed form") {
    // For N = 2 the eigenvalues are V0 +- V, so
    //   Gamma_{+-} = gamma0 +- Re(V),  Delta_{+-} = delta_omega0 +- Im(V)/2.
    std::mt19937 rng(421);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        LatticeSpec spec;
        spec.d = 1;
        spec.m = 2;
        spec.k0a = 1.5 + 4.0 * u(rng);
        SingleAtomTerm self;
        self.delta_omega0 = -2.0 + 4.0 * u(rng);
        const auto model =
            standard_coupling(1, 0.2 + 1.8 * u(rng), 2.0 * u(rng), u(rng) < 0.5 ? +1 : -1);
        const auto lattice = build_lattice(spec);
        const cplx v = pair_coupling(lattice[0], lattice[1], model);

        const auto res = solve_modes(coupling_matrix(lattice, model, self), self);
        REQUIRE(res.rates.size() == 2);
        // rates are sorted descending
        CHECK(res.rates(0) >= res.rates(1));
        CHECK(res.rates(0) ==
              doctest::Approx(1.0 + std::abs(v.real())).epsilon(1e-12));
        CHECK(res.rates(1) ==
              doctest::Approx(1.0 - std::abs(v.real())).epsilon(1e-12));
        const double sgn = v.real() >= 0.0 ? 1.0 : -1.0;
        CHECK(res.shifts(0) ==
              doctest::Approx(self.delta_omega0 + sgn * v.imag() / 2.0).epsilon(1e-12));
        CHECK(res.shifts(1) ==
              doctest::Approx(self.delta_omega0 - sgn * v.imag() / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("small-volume limit has one bright and N-1 dark modes") {
    SingleAtomTerm self;
    const auto res = solve_modes(dicke_matrix(4, self), self);
    REQUIRE(res.rates.size() == 4);
    CHECK(res.rates(0) == doctest::Approx(4.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(res.rates(i)) < 1e-12);
    // the bright eigenvector is uniform across atoms
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(res.eigenvectors(i, 0)) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("eigenvalue sums reproduce the trace") {
    LatticeSpec spec;
    spec.d = 1;
    spec.m = 64;
    spec.k0a = 3.0;
    SingleAtomTerm self;
    self.delta_omega0 = 0.9;
    const auto M = coupling_matrix(build_lattice(spec), standard_coupling(1, 1.0, 0.0), self);
    const auto res = solve_modes(M, self);
    CHECK(res.rates.sum() == doctest::Approx(64.0).epsilon(1e-11));
    CHECK(res.shifts.sum() == doctest::Approx(64.0 * 0.9).epsilon(1e-11));
    // eigenvector columns are unit-norm
    for (int i = 0; i < 5; ++i)
        CHECK(res.eigenvectors.col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_modes validates its input") {
    SingleAtomTerm self;
    Eigen::MatrixXcd empty;
    CHECK_THROWS_AS(solve_modes(empty, self), validation_error);
    Eigen::MatrixXcd rect = Eigen::MatrixXcd::Zero(2, 3);
    CHECK_THROWS_AS(solve_modes(rect, self), validation_error);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 1) = cplx(std::nan(""), 0.0);
    try {
        solve_modes(bad, self);
        FAIL("expected a throw");
    } catch (const validation_error& e) {
        CHECK(e.code() == errc::bad_matrix);
    }
}

TEST_CASE("lattice sum on a four-site chain by hand") {
    LatticeSpec spec;
    spec.d = 1;
    spec.m = 4;
    spec.k0a = 3.0;
    const auto lattice = build_lattice(spec);
    const auto model = standard_coupling(1, 1.0, 0.5);

    Wavevector kv;
    kv.k = 1.3;
    const auto pt = lattice_sum(lattice, model, kv);

    // sites at x = -3, 0 (reference), 3, 6
    auto V = [&](double r) { return std::polar(std::pow(r, -0.5), r); };
    const cplx expect = V(3.0) * std::polar(1.0, +3.0 * 1.3) +
                        V(3.0) * std::polar(1.0, -3.0 * 1.3) +
                        V(6.0) * std::polar(1.0, -6.0 * 1.3);
    CHECK(pt.I.real() == doctest::Approx(expect.real()).epsilon(1e-13));
    CHECK(pt.I.imag() == doctest::Approx(expect.imag()).epsilon(1e-13));
    CHECK(pt.chi == doctest::Approx(1.0 + expect.real()).epsilon(1e-13));
    CHECK(pt.shift == doctest::Approx(expect.imag() / 2.0).epsilon(1e-13));
    CHECK(pt.k == 1.3);
}

TEST_CASE("lattice sum rejects a site on top of the reference atom") {
    std::vector<LatticePosition> sites(2);
    sites[0].n = {1, 0, 0};
    sites[0].x = {0.0, 0.0, 0.0}; // nonzero index but zero separation
    sites[1].n = {2, 0, 0};
    sites[1].x = {6.0, 0.0, 0.0};
    Wavevector kv;
    try {
        lattice_sum(sites, standard_coupling(1, 1.0, 0.0), kv);
        FAIL("expected a throw");
    } catch (const validation_error& e) {
        CHECK(e.code() == errc::coincident_sites);
    }
}

TEST_CASE("scan agrees with pointwise sums") {
    LatticeSpec spec;
    spec.d = 2;
    spec.m = 8;
    spec.k0a = 2.5;
    const auto lattice = build_lattice(spec);
    const auto model = compensated_coupling_2d(1.0, 0.5);
    const double phi = matched_scan_azimuth(2);

    const auto pts = dispersion_scan(lattice, model, 0.8, 1.2, 21, pi / 2.0, phi);
    REQUIRE(pts.size() == 21);
    CHECK(pts.front().k == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(pts.back().k == doctest::Approx(1.2).epsilon(1e-15));
    for (int i = 0; i < 21; i += 4) {
        Wavevector kv;
        kv.k = pts[i].k;
        kv.phi = phi;
        const auto ref = lattice_sum(lattice, model, kv);
        CHECK(std::abs(pts[i].I - ref.I) <= 1e-12 * std::max(1.0, std::abs(ref.I)));
    }
}

TEST_CASE("scan grid validation") {
    LatticeSpec spec;
    spec.d = 1;
    spec.m = 4;
    const auto lattice = build_lattice(spec);
    const auto model = standard_coupling(1, 1.0, 0.0);
    CHECK_THROWS_AS(dispersion_scan(lattice, model, 1.2, 0.8, 11), validation_error);
    CHECK_THROWS_AS(dispersion_scan(lattice, model, 0.8, 1.2, 1), validation_error);
}

TEST_CASE("resonant enhancement peaks near k0") {
    LatticeSpec spec;
    spec.d = 1;
    spec.m = 200;
    spec.k0a = 3.0;
    const auto lattice = build_lattice(spec);
    const auto model = standard_coupling(1, 1.0, 0.0);
    const auto pts = dispersion_scan(lattice, model, 0.9, 1.1, 201);
    double best_chi = -1e300;
    double best_k = 0.0;
    for (const auto& p : pts)
        if (p.chi > best_chi) {
            best_chi = p.chi;
            best_k = p.k;
        }
    CHECK(std::abs(best_k - 1.0) < 2e-3); // within one grid step of resonance
    CHECK(best_chi == doctest::Approx(1.0 + 0.5 * 200.0).epsilon(0.02));
}

} // TEST_SUITE
