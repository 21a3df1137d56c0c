#include "supra/spectrum.hpp"

#include "supra/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace supra {

SpectrumResult solve_modes(const Eigen::MatrixXcd& matrix, const SingleAtomTerm& self) {
    self.validate();
    const long n = matrix.rows();
    if (n == 0 || matrix.cols() != n)
        throw validation_error(errc::bad_matrix, "solve_modes: matrix must be square and non-empty");
    if (!matrix.allFinite())
        throw validation_error(errc::bad_matrix, "solve_modes: matrix has non-finite entries");

    const Eigen::MatrixXcd H = cplx(0.0, -0.5) * matrix;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(H, /*computeEigenvectors=*/true);
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;
    if (solver.info() == Eigen::Success) {
        values = solver.eigenvalues();
        vectors = solver.eigenvectors();
    } else {
        // QR iteration can stall when a large eigenvalue cluster sits at the
        // origin (e.g. the all-to-all matrix, rank 1 with n-1 zero modes):
        // after Hessenberg reduction the cluster's diagonal entries are
        // round-off sized, so the relative deflation test never fires.
        // Shifting the diagonal by ~||H|| moves the cluster away from zero
        // without changing eigenvectors; undo the shift on the eigenvalues.
        const double sigma = H.cwiseAbs().rowwise().sum().maxCoeff();
        Eigen::MatrixXcd shifted = H;
        shifted.diagonal().array() -= sigma;
        solver.compute(shifted, /*computeEigenvectors=*/true);
        if (solver.info() != Eigen::Success)
            throw eigensolver_error("solve_modes: eigensolver failed to converge",
                                    std::numeric_limits<double>::quiet_NaN());
        values = solver.eigenvalues().array() + sigma;
        vectors = solver.eigenvectors();
    }

    // Trace is exactly preserved by similarity transforms; a violation here
    // means the decomposition itself is unreliable, not just ill-conditioned.
    const cplx trace_matrix = H.trace();
    const cplx trace_eigen = values.sum();
    const double trace_scale = std::max(1.0, std::abs(trace_matrix));
    const double trace_residual = std::abs(trace_eigen - trace_matrix) / trace_scale;
    if (!(trace_residual < 1e-9))
        throw eigensolver_error("solve_modes: eigenvalue sum deviates from trace (relative residual " +
                                    std::to_string(trace_residual) + ")",
                                trace_residual);

    // Full residual ||H v - lambda v|| is O(N^2) per mode; affordable for the
    // sizes where a silent failure would be hardest to notice downstream.
    if (n <= 1024) {
        const double scale = std::max(1.0, H.norm());
        double worst = 0.0;
        for (long j = 0; j < n; ++j) {
            const auto v = vectors.col(j);
            const double r = (H * v - values(j) * v).norm() / scale;
            worst = std::max(worst, r);
        }
        if (!(worst < 1e-9))
            throw eigensolver_error("solve_modes: eigenpair residual " + std::to_string(worst) +
                                        " exceeds 1e-9",
                                    worst);
    }

    std::vector<long> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0L);
    const auto& ev = values;
    std::sort(order.begin(), order.end(), [&ev](long a, long b) {
        const double ga = -2.0 * ev(a).imag();
        const double gb = -2.0 * ev(b).imag();
        if (ga != gb) return ga > gb;     // rate descending
        return ev(a).real() < ev(b).real(); // then shift ascending
    });

    SpectrumResult out;
    out.eigenvalues.resize(n);
    out.rates.resize(n);
    out.shifts.resize(n);
    out.eigenvectors.resize(n, n);
    for (long j = 0; j < n; ++j) {
        const long src = order[static_cast<size_t>(j)];
        out.eigenvalues(j) = ev(src);
        out.rates(j) = -2.0 * ev(src).imag();
        out.shifts(j) = ev(src).real();
        Eigen::VectorXcd v = vectors.col(src);
        const double norm = v.norm();
        if (norm > 0.0) v /= norm;
        out.eigenvectors.col(j) = v;
    }
    return out;
}

DispersionPoint lattice_sum(const std::vector<LatticePosition>& lattice,
                            const CouplingModel& model, const Wavevector& kvec) {
    model.validate();
    kvec.validate();
    if (lattice.empty())
        throw validation_error(errc::bad_atom_count, "lattice_sum: empty lattice");

    const std::array<double, 3> kxyz = kvec.resolve(model.d);
    cplx sum(0.0, 0.0);
    const std::array<double, 3> origin{0.0, 0.0, 0.0};
    const LatticePosition origin_site{{0, 0, 0}, origin};
    for (const auto& site : lattice) {
        if (site.n[0] == 0 && site.n[1] == 0 && site.n[2] == 0) continue; // primed sum
        const cplx v = pair_coupling(origin_site, site, model);
        const double phase = kxyz[0] * site.x[0] + kxyz[1] * site.x[1] + kxyz[2] * site.x[2];
        sum += v * std::polar(1.0, -phase);
    }

    DispersionPoint p;
    p.k = kvec.k;
    p.theta = kvec.theta;
    p.I = sum;
    p.chi = 1.0 + sum.real();
    p.shift = 0.5 * sum.imag();
    return p;
}

std::vector<DispersionPoint> dispersion_scan(const std::vector<LatticePosition>& lattice,
                                             const CouplingModel& model, double k_min,
                                             double k_max, int points, double theta,
                                             double phi) {
    if (!(points >= 2))
        throw validation_error(errc::bad_grid, "dispersion_scan: need at least 2 grid points");
    if (!(k_min > 0.0) || !(k_max > k_min))
        throw validation_error(errc::bad_wavevector,
                               "dispersion_scan: require 0 < k_min < k_max");

    model.validate();
    if (lattice.empty())
        throw validation_error(errc::bad_atom_count, "dispersion_scan: empty lattice");

    // The couplings V_r do not depend on k; hoist them out of the k loop so a
    // scan costs one coupling pass plus a cheap phase sum per grid point.
    const LatticePosition origin_site{{0, 0, 0}, {0.0, 0.0, 0.0}};
    std::vector<cplx> v;
    std::vector<std::array<double, 3>> pos;
    v.reserve(lattice.size());
    pos.reserve(lattice.size());
    for (const auto& site : lattice) {
        if (site.n[0] == 0 && site.n[1] == 0 && site.n[2] == 0) continue;
        v.push_back(pair_coupling(origin_site, site, model));
        pos.push_back(site.x);
    }

    std::vector<DispersionPoint> out;
    out.reserve(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double k = k_min + (k_max - k_min) * static_cast<double>(i) /
                                     static_cast<double>(points - 1);
        Wavevector kv;
        kv.k = k;
        kv.theta = theta;
        kv.phi = phi;
        kv.validate();
        const std::array<double, 3> kxyz = kv.resolve(model.d);
        cplx sum(0.0, 0.0);
        for (size_t j = 0; j < v.size(); ++j) {
            const double phase =
                kxyz[0] * pos[j][0] + kxyz[1] * pos[j][1] + kxyz[2] * pos[j][2];
            sum += v[j] * std::polar(1.0, -phase);
        }
        DispersionPoint p;
        p.k = k;
        p.theta = theta;
        p.I = sum;
        p.chi = 1.0 + sum.real();
        p.shift = 0.5 * sum.imag();
        out.push_back(p);
    }
    return out;
}

} // namespace supra
