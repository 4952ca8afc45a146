#pragma once

#include "jeig/matrix.hpp"

namespace jeig {

enum class RotationKind { trig, hyperbolic, identity };

// One 2x2 plane transformation acting on columns i < j.
// trig: c = cos, s = sin (c^2 + s^2 = 1); hyperbolic: c = cosh, s = sinh
// (c^2 - s^2 = 1, c >= 1).
struct RotationParams {
    RotationKind kind = RotationKind::identity;
    double c = 1.0;
    double s = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
};

// Diagonalizing rotation for the symmetric 2x2 [[a_ii, a_ij], [a_ij, a_jj]],
// smaller-angle convention. Returns identity when the off-diagonal entry is
// zero or below the relative threshold conv_tol * sqrt(|a_ii * a_jj|).
RotationParams trig_params(double a_ii, double a_jj, double a_ij,
                           double conv_tol = 0.0);

// Hyperbolic rotation for a positive definite 2x2 pivot: solves
// tanh(2*phi) = -2*a_ij / (a_ii + a_jj). If rounding pushes |tanh phi| to 1
// or beyond, a partial transformation with tanh phi = +/-0.9 is used instead
// (same sign); convergence resumes on a later sweep.
RotationParams hyp_params(double a_ii, double a_jj, double a_ij,
                          double conv_tol = 0.0);

// In-place update of columns i and j:
//   trig:       (m_i', m_j') = (c*m_i - s*m_j, s*m_i + c*m_j)
//   hyperbolic: (m_i', m_j') = (c*m_i + s*m_j, s*m_i + c*m_j)
void apply_to_columns(DenseMatrix& M, const RotationParams& rot);

}  // namespace jeig
