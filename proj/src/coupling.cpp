#include "supra/coupling.hpp"

#include <cmath>

namespace supra {

void CouplingModel::validate() const {
    if (d < 1 || d > 3)
        throw validation_error(errc::bad_dimension, "coupling dimension must be 1, 2, or 3");
    if (!(alpha >= 0.0))
        throw validation_error(errc::bad_alpha, "power-law exponent alpha must be >= 0");
    if (epsilon != 1 && epsilon != -1)
        throw validation_error(errc::bad_epsilon, "phase sign epsilon must be +1 or -1");
    if (!std::isfinite(A.real()) || !std::isfinite(A.imag()))
        throw validation_error(errc::bad_strength, "coupling strength must be finite");
    if (custom) return;
    if (d <= 2) {
        if (A.imag() != 0.0 || A.real() < 0.0)
            throw validation_error(errc::bad_strength,
                                   "for d=1,2 the strength A must be real and >= 0 "
                                   "(use custom mode to relax)");
    } else {
        if (A.real() != 0.0 || A.imag() > 0.0)
            throw validation_error(errc::bad_strength,
                                   "for d=3 the strength A must be purely imaginary with "
                                   "Im(A) <= 0 (use custom mode to relax)");
    }
}

CouplingModel standard_coupling(int d, double magnitude, double alpha, int epsilon) {
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude))
        throw validation_error(errc::bad_strength, "coupling magnitude must be finite and >= 0");
    CouplingModel model;
    model.d = d;
    model.alpha = alpha;
    model.epsilon = epsilon;
    model.A = (d == 3) ? cplx(0.0, -magnitude) : cplx(magnitude, 0.0);
    model.validate();
    return model;
}

CouplingModel compensated_coupling_2d(double magnitude, double alpha, int epsilon) {
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude))
        throw validation_error(errc::bad_strength, "coupling magnitude must be finite and >= 0");
    CouplingModel model;
    model.d = 2;
    model.alpha = alpha;
    model.epsilon = epsilon;
    model.A = std::polar(magnitude, -epsilon * pi / 4.0);
    model.custom = true;
    model.validate();
    return model;
}

void SingleAtomTerm::validate() const {
    if (gamma0 != 1.0)
        throw validation_error(errc::bad_config,
                               "gamma0 is the unit of rates and must equal 1");
    if (!std::isfinite(delta_omega0))
        throw validation_error(errc::bad_config, "delta_omega0 must be finite");
}

namespace {

// Assumes a validated model; distance r > 0 in units 1/k0.
cplx coupling_value(const CouplingModel& model, double r, double dz) {
    double sin2 = 1.0;
    if (model.d == 3) {
        const double c = dz / r;
        sin2 = 1.0 - c * c;
    }
    const double mag = sin2 * std::pow(r, -model.alpha);
    return model.A * std::polar(mag, model.epsilon * r);
}

} // namespace

cplx pair_coupling(const LatticePosition& ri, const LatticePosition& rj,
                   const CouplingModel& model) {
    model.validate();
    if (ri.n == rj.n)
        throw validation_error(errc::coincident_sites,
                               "pair coupling is undefined for coincident sites");
    const double r = distance(ri, rj);
    if (r <= 0.0)
        throw validation_error(errc::coincident_sites,
                               "pair coupling is undefined for zero separation");
    return coupling_value(model, r, ri.x[2] - rj.x[2]);
}

cplx pair_coupling(const LatticePosition& ri, const LatticePosition& rj,
                   const std::vector<CouplingModel>& models) {
    if (models.empty())
        throw validation_error(errc::bad_config, "at least one coupling term is required");
    cplx v = 0.0;
    for (const auto& model : models) v += pair_coupling(ri, rj, model);
    return v;
}

Eigen::MatrixXcd coupling_matrix(const std::vector<LatticePosition>& lattice,
                                 const std::vector<CouplingModel>& models,
                                 const SingleAtomTerm& self, long atom_cap) {
    self.validate();
    if (models.empty())
        throw validation_error(errc::bad_config, "at least one coupling term is required");
    for (const auto& model : models) model.validate();
    const long n = static_cast<long>(lattice.size());
    if (n < 1)
        throw validation_error(errc::bad_atom_count, "lattice must contain at least one site");
    if (n > atom_cap)
        throw validation_error(errc::atom_cap_exceeded,
                               "atom count exceeds the dense-matrix cap");

    Eigen::MatrixXcd M(n, n);
    const cplx v0 = self.V0();
    for (long i = 0; i < n; ++i) {
        M(i, i) = v0;
        for (long j = i + 1; j < n; ++j) {
            cplx v = 0.0;
            const double r = distance(lattice[i], lattice[j]);
            if (lattice[i].n == lattice[j].n || r <= 0.0)
                throw validation_error(errc::coincident_sites,
                                       "lattice contains coincident sites");
            const double dz = lattice[i].x[2] - lattice[j].x[2];
            for (const auto& model : models) v += coupling_value(model, r, dz);
            M(i, j) = v;
            M(j, i) = v; // coupling is even under r -> -r
        }
    }
    return M;
}

Eigen::MatrixXcd coupling_matrix(const std::vector<LatticePosition>& lattice,
                                 const CouplingModel& model, const SingleAtomTerm& self,
                                 long atom_cap) {
    return coupling_matrix(lattice, std::vector<CouplingModel>{model}, self, atom_cap);
}

Eigen::MatrixXcd dicke_matrix(long N, const SingleAtomTerm& self, long atom_cap) {
    self.validate();
    if (N <= 0)
        throw validation_error(errc::bad_atom_count, "atom count must be positive");
    if (N > atom_cap)
        throw validation_error(errc::atom_cap_exceeded,
                               "atom count exceeds the dense-matrix cap");
    return Eigen::MatrixXcd::Constant(N, N, self.V0());
}

} // namespace supra
