#include "supra/core.hpp"

#include <cmath>

namespace supra {

long LatticeSpec::N() const {
    long n = 1;
    for (int i = 0; i < d; ++i) n *= m;
    return n;
}

void LatticeSpec::validate() const {
    if (d < 1 || d > 3)
        throw validation_error(errc::bad_dimension, "lattice dimension must be 1, 2, or 3");
    if (m <= 0)
        throw validation_error(errc::side_not_positive, "atoms per side must be positive");
    if (m % 2 != 0)
        throw validation_error(errc::side_odd, "atoms per side must be even");
    if (!(k0a > 1.0))
        throw validation_error(errc::lattice_not_extended,
                               "k0a must exceed 1 (extended-sample regime)");
}

double distance(const LatticePosition& p, const LatticePosition& q) {
    const double dx = p.x[0] - q.x[0];
    const double dy = p.x[1] - q.x[1];
    const double dz = p.x[2] - q.x[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void Wavevector::validate() const {
    if (!(k >= 0.0) || !std::isfinite(k))
        throw validation_error(errc::bad_wavevector, "wavevector magnitude must be finite and >= 0");
    if (!(theta >= 0.0 && theta <= pi))
        throw validation_error(errc::bad_wavevector, "polar angle must lie in [0, pi]");
    if (components) {
        const auto& c = *components;
        const double mag = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
        const double scale = std::max(mag, 1.0);
        if (std::abs(mag - k) > 1e-12 * scale)
            throw validation_error(errc::bad_wavevector,
                                   "explicit components are inconsistent with the stored magnitude");
        if (mag > 0.0) {
            const double th = std::acos(std::clamp(c[2] / mag, -1.0, 1.0));
            if (std::abs(th - theta) > 1e-12 * std::max(1.0, std::abs(theta)))
                throw validation_error(errc::bad_wavevector,
                                       "explicit components are inconsistent with the stored polar angle");
        }
    }
}

std::array<double, 3> Wavevector::resolve(int d) const {
    validate();
    if (components) return *components;
    switch (d) {
    case 1:
        return {k, 0.0, 0.0};
    case 2:
        return {k * std::cos(phi), k * std::sin(phi), 0.0};
    case 3:
        return {k * std::sin(theta) * std::cos(phi), k * std::sin(theta) * std::sin(phi),
                k * std::cos(theta)};
    default:
        throw validation_error(errc::bad_dimension, "dimension must be 1, 2, or 3");
    }
}

Wavevector Wavevector::from_components(const std::array<double, 3>& c) {
    Wavevector kv;
    kv.k = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
    kv.theta = kv.k > 0.0 ? std::acos(std::clamp(c[2] / kv.k, -1.0, 1.0)) : pi / 2.0;
    kv.phi = (c[0] != 0.0 || c[1] != 0.0) ? std::atan2(c[1], c[0]) : 0.0;
    kv.components = c;
    return kv;
}

DimensionConstants dimension_constants(int d, std::optional<double> theta) {
    switch (d) {
    case 1:
        return {0.5, 1.0, Kernel::cosine};
    case 2:
        return {1.0 / std::sqrt(pi), std::sqrt(2.0 * pi), Kernel::cosine};
    case 3: {
        if (!theta)
            throw validation_error(errc::bad_wavevector,
                                   "d=3 constants require the wavevector's polar angle");
        const double s = std::sin(*theta);
        return {std::cbrt(3.0 / (4.0 * pi)), 2.0 * pi * s * s, Kernel::sine};
    }
    default:
        throw validation_error(errc::bad_dimension, "dimension must be 1, 2, or 3");
    }
}

std::vector<LatticePosition> build_lattice(const LatticeSpec& spec) {
    spec.validate();
    const int lo = -spec.m / 2 + 1;
    const int hi = spec.m / 2;
    const int lo2 = spec.d >= 2 ? lo : 0, hi2 = spec.d >= 2 ? hi : 0;
    const int lo3 = spec.d >= 3 ? lo : 0, hi3 = spec.d >= 3 ? hi : 0;

    std::vector<LatticePosition> sites;
    sites.reserve(static_cast<std::size_t>(spec.N()));
    for (int n1 = lo; n1 <= hi; ++n1)
        for (int n2 = lo2; n2 <= hi2; ++n2)
            for (int n3 = lo3; n3 <= hi3; ++n3) {
                LatticePosition p;
                p.n = {n1, n2, n3};
                p.x = {spec.k0a * n1, spec.k0a * n2, spec.k0a * n3};
                sites.push_back(p);
            }
    return sites;
}

double matched_scan_azimuth(int d) {
    if (d < 1 || d > 3)
        throw validation_error(errc::bad_dimension, "dimension must be 1, 2, or 3");
    if (d == 2) return std::acos(std::sqrt(pi) / 2.0);
    return 0.0;
}

} // namespace supra
