#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "supra/errors.hpp"

// Shared domain types and unit conventions.
//
// Units are fixed globally: rates and shifts in units of the single-atom
// decay rate gamma0 (= 1 identically), lengths in units of 1/k0 so the
// lattice constant enters only as the dimensionless product k0*a, and
// wavenumbers in units of k0.  The bare transition frequency omega0 is the
// zero of the shift axis.

namespace supra {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Simple-cubic arrangement of m^d atoms, spacing a with k0*a > 1 (extended
// sample).  m must be even so the index set {-m/2+1, ..., m/2} is defined.
struct LatticeSpec {
    int d = 1;        // dimension, 1..3
    double k0a = 3.0; // lattice constant in units 1/k0
    int m = 2;        // atoms per side

    long N() const;   // total atom count m^d
    void validate() const;
};

struct LatticePosition {
    std::array<int, 3> n{0, 0, 0};      // integer indices; trailing entries zero
    std::array<double, 3> x{0., 0., 0.}; // coordinates k0a * n_i, units 1/k0
};

double distance(const LatticePosition& p, const LatticePosition& q);

// Plane-wave label.  theta is the polar angle against the dipole (x3) axis,
// phi the azimuth in the x1-x2 lattice plane.  For d = 1,2 the wavevector
// lies in the lattice plane (theta = pi/2 by geometry).
struct Wavevector {
    double k = 1.0;          // magnitude, units k0
    double theta = pi / 2.0; // polar angle in [0, pi]
    double phi = 0.0;        // azimuth
    std::optional<std::array<double, 3>> components;

    void validate() const;
    std::array<double, 3> resolve(int d) const; // explicit components
    static Wavevector from_components(const std::array<double, 3>& c);
};

enum class Kernel { cosine, sine };

// Dimension-dependent constants of the angular reduction: geometry factor
// b_d (equal-volume radius per atom spacing), angular weight c_d, and the
// radial kernel g_d.  For d = 3, c_3 = 2*pi*sin^2(theta) depends on the
// wavevector's polar angle.
struct DimensionConstants {
    double b;
    double c;
    Kernel g;
};

DimensionConstants dimension_constants(int d, std::optional<double> theta = std::nullopt);

// All m^d sites in lexicographic index order (n1 slowest).
std::vector<LatticePosition> build_lattice(const LatticeSpec& spec);

// Scan azimuth at which a square lattice best reproduces the equal-area disk
// of the continuum treatment: the boundary distance along the scan direction
// equals the disk radius a*b_2*sqrt(N), giving cos(phi) = sqrt(pi)/2.
// Returns 0 for d = 1, 3 where no such matching is needed.
double matched_scan_azimuth(int d);

} // namespace supra
