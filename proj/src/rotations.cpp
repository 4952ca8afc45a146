#include "jeig/rotations.hpp"

#include <cmath>
#include <stdexcept>

namespace jeig {

RotationParams trig_params(double a_ii, double a_jj, double a_ij, double conv_tol) {
    RotationParams r;
    if (a_ij == 0.0) return r;
    if (std::abs(a_ij) <= conv_tol * std::sqrt(std::abs(a_ii * a_jj))) return r;
    double tau = (a_jj - a_ii) / (2.0 * a_ij);
    double sgn = tau >= 0.0 ? 1.0 : -1.0;
    double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    r.kind = RotationKind::trig;
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = t * r.c;
    return r;
}

RotationParams hyp_params(double a_ii, double a_jj, double a_ij, double conv_tol) {
    RotationParams r;
    if (a_ij == 0.0) return r;
    if (std::abs(a_ij) <= conv_tol * std::sqrt(std::abs(a_ii * a_jj))) return r;
    double th2 = -2.0 * a_ij / (a_ii + a_jj);
    double t;
    if (std::abs(th2) >= 1.0) {
        t = std::copysign(0.9, th2);
    } else {
        t = th2 / (1.0 + std::sqrt(1.0 - th2 * th2));
        if (std::abs(t) >= 1.0) t = std::copysign(0.9, th2);
    }
    r.kind = RotationKind::hyperbolic;
    r.c = 1.0 / std::sqrt(1.0 - t * t);
    r.s = r.c * t;
    return r;
}

void apply_to_columns(DenseMatrix& M, const RotationParams& rot) {
    if (rot.i >= M.cols() || rot.j >= M.cols())
        throw std::invalid_argument("apply_to_columns: column index out of range");
    if (rot.kind == RotationKind::identity) return;
    double* mi = M.col(rot.i);
    double* mj = M.col(rot.j);
    std::size_t n = M.rows();
    double c = rot.c, s = rot.s;
    if (rot.kind == RotationKind::trig) {
        for (std::size_t k = 0; k < n; ++k) {
            double a = mi[k], b = mj[k];
            mi[k] = c * a - s * b;
            mj[k] = s * a + c * b;
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            double a = mi[k], b = mj[k];
            mi[k] = c * a + s * b;
            mj[k] = s * a + c * b;
        }
    }
}

}  // namespace jeig
