#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace supra {

// Reason codes for input rejection, so callers can distinguish failures
// without parsing messages.
enum class errc {
    none = 0,
    bad_dimension,
    side_not_positive,
    side_odd,
    lattice_not_extended,
    bad_alpha,
    bad_epsilon,
    bad_strength,
    coincident_sites,
    atom_cap_exceeded,
    bad_atom_count,
    bad_wavevector,
    bad_grid,
    bad_tolerance,
    bessel_domain,
    gamma_domain,
    constraint_violated,
    bad_target,
    bad_matrix,
    bad_config,
};

// Invalid input or parameters outside an operation's domain.  The CLI maps
// this to exit code 2.
class validation_error : public std::invalid_argument {
public:
    validation_error(errc code, const std::string& msg)
        : std::invalid_argument(msg), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Numerical breakdown (eigensolver failure, lost accuracy, ...).  Exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive quadrature ran out of subdivisions; carries the best estimate and
// its error bound.
class quadrature_error : public numerical_error {
public:
    quadrature_error(const std::string& msg, std::complex<double> best, double bound)
        : numerical_error(msg), best_(best), bound_(bound) {}
    std::complex<double> best_estimate() const noexcept { return best_; }
    double error_bound() const noexcept { return bound_; }

private:
    std::complex<double> best_;
    double bound_;
};

// Eigendecomposition did not reproduce the input matrix to tolerance.
class eigensolver_error : public numerical_error {
public:
    eigensolver_error(const std::string& msg, double residual)
        : numerical_error(msg), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// A design target that cannot be realised within the model.  Exit code 4.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace supra
