#pragma once

#include <stdexcept>
#include <string>

namespace jeig {

// Thrown when a Cholesky-type factorization meets a non-positive pivot.
struct not_positive_definite_error : std::runtime_error {
    explicit not_positive_definite_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when an input that must be numerically nonsingular is not.
struct rank_deficient_error : std::runtime_error {
    explicit rank_deficient_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when an iteration cap is hit before the stopping test is met.
struct non_convergence_error : std::runtime_error {
    non_convergence_error(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

}  // namespace jeig
