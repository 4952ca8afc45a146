#pragma once

#include "jeig/matrix.hpp"

namespace jeig {

// Which pivot pairs (u, v), u < v, a pass may rotate: every off-diagonal
// pair, or only the pairs straddling the column split between the two block
// columns of the pivot.
struct InnerScope {
    std::size_t split = 0;  // 0 = full off-diagonal

    static InnerScope full_offdiag() { return InnerScope{}; }
    static InnerScope offdiag_block(std::size_t k);  // k >= 1

    bool allows(std::size_t u, std::size_t v) const {
        return split == 0 || (u < split && split <= v);
    }
};

enum class InnerMode { one_sweep, diagonalize };

inline constexpr std::size_t kMaxInnerSweeps = 30;

struct InnerResult {
    DenseMatrix Q_acc;  // accumulated square transformation, n_P x n_P
    std::size_t rotations_used = 0;
    std::size_t stages_used = 0;  // passes over the annihilation list
    bool converged = false;
};

// Sequential one-sided pass(es) treating the rows of R as the working
// vectors of a signed factorization: pivot Gram entries
// h_uv = sum_k R(u,k) * J_P[k] * R(v,k), recomputed fresh for every pair.
// Trig rotations act on row pairs of R in place and are gathered into Q_acc
// (as column operations), so Q_acc' (R J_P R') Q_acc is the rotated Gram.
// Row-cyclic order over the requested scope; one_sweep = a single pass,
// diagonalize = repeat until a pass applies no rotation. J_P length must
// match R's column count.
InnerResult inner_sweep_trig(DenseMatrix& R, const SignVector& J_P,
                             const InnerScope& scope, InnerMode mode,
                             double conv_tol);

// Same sweep structure over the columns of R in the Euclidean inner product
// (pivot a_uv = col_u . col_v). Rotation kind per pair follows the signs
// J_P[u], J_P[v] of the two columns: equal signs take a trig rotation,
// mixed signs a hyperbolic one, so the accumulated Q_acc is J_P-unitary.
InnerResult inner_sweep_hyp(DenseMatrix& R, const SignVector& J_P,
                            const InnerScope& scope, InnerMode mode,
                            double conv_tol);

// Row k of the result = row P[k] of the input; undoes the column pivoting
// of a factorization when applied to the accumulated transformation.
void apply_permutation_rows(DenseMatrix& Q, const Permutation& P);

}  // namespace jeig
