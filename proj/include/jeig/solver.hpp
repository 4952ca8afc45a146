#pragma once

#include <cstddef>
#include <vector>

#include "jeig/engine.hpp"
#include "jeig/matrix.hpp"

namespace jeig {

// Full pipeline for a dense symmetric H: indefinite factorization with
// complete pivoting, row sign-sort so the signature comes out +1-first,
// the parallel block solver, then quality metrics recomputed from the
// returned eigenpairs. Throws rank_deficient_error when the factorization
// cancels to exact rank deficiency.
SolveReport solve_symmetric(const DenseMatrix& H, Algorithm variant,
                            std::size_t p = 1, double conv_tol = 0.0,
                            std::size_t max_sweeps = 50,
                            const TraceSink& trace = {});

// Orthogonality certificate ||U'U - I||_2 <= b(b+2), b = 14 eps ell
// sqrt(2 p n), with ell the report's stage count and eps = 2^-52. A run
// with ell = 0 must return the identity exactly.
struct Theorem1Check {
    double orth_norm2 = 0.0;  // ||U'U - I||_2, symmetric power iteration
    double bound = 0.0;       // b(b+2)
    double margin = 0.0;      // orth_norm2 / bound, 0 for a 0/0 case
    bool pass = false;
};
Theorem1Check check_theorem1(const SolveReport& rep);

// kappa_2 of the Jacobi-scaled matrix A = D^-1 H D^-1, D = diag(sqrt(h_kk)),
// computed with the solver itself (all-plus signature, one worker). Positive
// diagonal required.
double scaled_condition(const DenseMatrix& H);

// Element-wise relative agreement of two eigenvalue sets, each sorted
// ascending before matching. The reference must not contain exact zeros.
struct RelAccuracy {
    std::vector<double> per_eigenvalue;
    double max_rel = 0.0;
};
RelAccuracy relative_accuracy_report(const std::vector<double>& computed,
                                     const std::vector<double>& reference);

}  // namespace jeig
