#pragma once

#include "jeig/matrix.hpp"

namespace jeig {

// Symmetric indefinite factorization P'AP = R' J_P R (P as a value map:
// P[k] = factor column holding original index k). R is rank x n, upper
// triangular apart from the 2x2 diagonal blocks produced by paired pivots.
struct IndefFactor {
    DenseMatrix R;
    SignVector J_P;
    Permutation P;
    std::size_t rank = 0;
};

// Complete pivoting: at each step compare the largest remaining diagonal
// magnitude mu0 against the largest off-diagonal magnitude mu1 with
// threshold alpha = (1+sqrt(17))/8; take a 1x1 pivot at the diagonal max
// when mu0 >= alpha*mu1, else the 2x2 pivot straddling the off-diagonal
// max. Stops early (rank < n, trapezoidal R) only when the trailing
// submatrix cancels to exact zeros, so graded spectra are never chopped.
IndefFactor bunch_parlett_complete(const DenseMatrix& A);

// Column k of the result is the factor column for original index k, so the
// returned F satisfies A = F' diag(J_P) F with no permutation left over.
DenseMatrix restore_column_order(const IndefFactor& F);

struct CholFactor {
    DenseMatrix R;
    Permutation P;
};

CholFactor cholesky_unpivoted(const DenseMatrix& A);

// Pivot on the largest remaining diagonal entry (ties: lowest index);
// diag(R) comes out non-increasing.
CholFactor cholesky_diag_pivoted(const DenseMatrix& A);

// Two-part diagonally pivoted Cholesky respecting the +/- partition of J_P
// (sorted, n_pos leading +1s): factor the ++ block, solve for the coupling,
// factor the Schur complement of the -- block, then reverse the columns of
// the second block (of R and of its permutation) so the most negative
// eigenvalue candidates meet first.
CholFactor cholesky_sign_pivoted(const DenseMatrix& A_P, const SignVector& J_P);

// Full Householder QR, A (m x k, m >= k) = Q * [T; 0] with Q m x m
// orthogonal and T k x k upper triangular.
struct QRFull {
    DenseMatrix Q;
    DenseMatrix T;
};
QRFull qr_full(const DenseMatrix& A);

// The square upper-triangular factor of a full-column-rank tall matrix;
// errors out if the diagonal collapses below k*eps*max|t_ii|.
DenseMatrix qr_of_trapezoid(const DenseMatrix& Rt);

}  // namespace jeig
