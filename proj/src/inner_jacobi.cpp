#include "jeig/inner_jacobi.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "jeig/errors.hpp"
#include "jeig/rotations.hpp"

namespace jeig {

namespace {

template <typename Visit>
void for_each_pair(std::size_t n, const InnerScope& scope, Visit&& visit) {
    if (scope.split == 0) {
        for (std::size_t u = 0; u + 1 < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) visit(u, v);
    } else {
        for (std::size_t u = 0; u < scope.split; ++u)
            for (std::size_t v = scope.split; v < n; ++v) visit(u, v);
    }
}

void rotate_rows(DenseMatrix& R, std::size_t u, std::size_t v,
                 const RotationParams& rot) {
    const std::size_t m = R.cols();
    const double c = rot.c, s = rot.s;
    if (rot.kind == RotationKind::trig) {
        for (std::size_t k = 0; k < m; ++k) {
            double a = R(u, k), b = R(v, k);
            R(u, k) = c * a - s * b;
            R(v, k) = s * a + c * b;
        }
    } else {
        for (std::size_t k = 0; k < m; ++k) {
            double a = R(u, k), b = R(v, k);
            R(u, k) = c * a + s * b;
            R(v, k) = s * a + c * b;
        }
    }
}

}  // namespace

InnerScope InnerScope::offdiag_block(std::size_t k) {
    if (k == 0)
        throw std::invalid_argument("InnerScope::offdiag_block: split must be >= 1");
    InnerScope s;
    s.split = k;
    return s;
}

InnerResult inner_sweep_trig(DenseMatrix& R, const SignVector& J_P,
                             const InnerScope& scope, InnerMode mode,
                             double conv_tol) {
    const std::size_t n = R.rows();
    const std::size_t m = R.cols();
    if (J_P.size() != m)
        throw std::invalid_argument("inner_sweep_trig: J_P length != column count");
    if (scope.split >= n && n > 0 && scope.split != 0)
        throw std::invalid_argument("inner_sweep_trig: split out of range");

    InnerResult res;
    res.Q_acc = DenseMatrix::identity(n);
    const std::size_t max_passes = mode == InnerMode::one_sweep ? 1 : kMaxInnerSweeps;
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        std::size_t rots = 0;
        for_each_pair(n, scope, [&](std::size_t u, std::size_t v) {
            double huu = 0.0, hvv = 0.0, huv = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                double ru = R(u, k), rv = R(v, k), j = J_P[k];
                huu += ru * j * ru;
                hvv += rv * j * rv;
                huv += ru * j * rv;
            }
            RotationParams rot = trig_params(huu, hvv, huv, conv_tol);
            if (rot.kind == RotationKind::identity) return;
            rotate_rows(R, u, v, rot);
            rot.i = u;
            rot.j = v;
            apply_to_columns(res.Q_acc, rot);
            ++rots;
        });
        res.rotations_used += rots;
        res.stages_used += 1;
        if (rots == 0) {
            res.converged = true;
            break;
        }
    }
    if (mode == InnerMode::diagonalize && !res.converged) {
        double resid = 0.0;
        for_each_pair(n, scope, [&](std::size_t u, std::size_t v) {
            double huv = 0.0;
            for (std::size_t k = 0; k < m; ++k) huv += R(u, k) * J_P[k] * R(v, k);
            resid += huv * huv;
        });
        throw non_convergence_error(
            "inner_sweep_trig: pass cap reached before convergence",
            std::sqrt(resid));
    }
    return res;
}

InnerResult inner_sweep_hyp(DenseMatrix& R, const SignVector& J_P,
                            const InnerScope& scope, InnerMode mode,
                            double conv_tol) {
    const std::size_t n = R.cols();
    if (J_P.size() != n)
        throw std::invalid_argument("inner_sweep_hyp: J_P length != column count");
    if (scope.split >= n && n > 0 && scope.split != 0)
        throw std::invalid_argument("inner_sweep_hyp: split out of range");

    const std::size_t m = R.rows();
    auto dot = [&](std::size_t a, std::size_t b) {
        const double* ca = R.col(a);
        const double* cb = R.col(b);
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) acc += ca[k] * cb[k];
        return acc;
    };

    InnerResult res;
    res.Q_acc = DenseMatrix::identity(n);
    const std::size_t max_passes = mode == InnerMode::one_sweep ? 1 : kMaxInnerSweeps;
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        std::size_t rots = 0;
        for_each_pair(n, scope, [&](std::size_t u, std::size_t v) {
            double auu = dot(u, u), avv = dot(v, v), auv = dot(u, v);
            RotationParams rot = J_P[u] == J_P[v]
                                     ? trig_params(auu, avv, auv, conv_tol)
                                     : hyp_params(auu, avv, auv, conv_tol);
            if (rot.kind == RotationKind::identity) return;
            rot.i = u;
            rot.j = v;
            apply_to_columns(R, rot);
            apply_to_columns(res.Q_acc, rot);
            ++rots;
        });
        res.rotations_used += rots;
        res.stages_used += 1;
        if (rots == 0) {
            res.converged = true;
            break;
        }
    }
    if (mode == InnerMode::diagonalize && !res.converged) {
        double resid = 0.0;
        for_each_pair(n, scope, [&](std::size_t u, std::size_t v) {
            double auv = dot(u, v);
            resid += auv * auv;
        });
        throw non_convergence_error(
            "inner_sweep_hyp: pass cap reached before convergence",
            std::sqrt(resid));
    }
    return res;
}

void apply_permutation_rows(DenseMatrix& Q, const Permutation& P) {
    if (P.size() != Q.rows())
        throw std::invalid_argument("apply_permutation_rows: length mismatch");
    if (P.is_identity()) return;
    DenseMatrix out(Q.rows(), Q.cols());
    for (std::size_t j = 0; j < Q.cols(); ++j)
        for (std::size_t k = 0; k < Q.rows(); ++k) out(k, j) = Q(P[k], j);
    Q = std::move(out);
}

}  // namespace jeig
