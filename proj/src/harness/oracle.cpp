#include "jeig/harness/oracle.hpp"

#include <cmath>

namespace jeig::harness {

JacobiEigen<double> oracle_eigen(const DenseMatrix& A, bool want_vectors) {
    std::size_t n = A.rows();
    std::vector<double> a(A.data(), A.data() + n * n);
    double tol = 1e-15;
    return jacobi_eigen<double>(std::move(a), n, tol, want_vectors);
}

JacobiEigen<long double> oracle_eigen_ld(const DenseMatrix& A) {
    std::size_t n = A.rows();
    std::vector<long double> a(n * n);
    for (std::size_t k = 0; k < n * n; ++k) a[k] = A.data()[k];
    long double tol = 1e-18L;
    return jacobi_eigen<long double>(std::move(a), n, tol);
}

std::vector<double> naive_absolute_jacobi(const DenseMatrix& A) {
    std::size_t n = A.rows();
    std::vector<double> a(A.data(), A.data() + n * n);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[j * n + i]; };
    double scale = frobenius_norm(A);
    double tol = 1e-15 * scale;
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) <= tol) continue;  // absolute test: the point
                rotated = true;
                double app = at(p, p), aqq = at(q, q);
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = at(p, k) = c * akp - s * akq;
                    at(k, q) = at(q, k) = s * akp + c * akq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j + 1 < n - i; ++j)
            if (ev[j] > ev[j + 1]) std::swap(ev[j], ev[j + 1]);
    return ev;
}

Inertia oracle_inertia(const DenseMatrix& A, double zero_tol) {
    auto r = oracle_eigen(A);
    Inertia out;
    for (double v : r.eigenvalues) {
        if (std::abs(v) <= zero_tol)
            ++out.zero;
        else if (v < 0.0)
            ++out.neg;
        else
            ++out.pos;
    }
    return out;
}

}  // namespace jeig::harness
