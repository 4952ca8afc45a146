#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "jeig/matrix.hpp"

namespace jeig::harness {

// Reference eigensolver: classical two-sided cyclic Jacobi, written on
// purpose without touching the solver's rotation/factorization code so it
// can stand as an independent check. Templated so the same text runs in
// double and in 80-bit long double for the graded-matrix tests.
//
// Relative stopping test: rotate while |a_pq| > tol*sqrt(|a_pp*a_qq|).
// That keeps tiny eigenvalues of strongly graded matrices accurate; see
// naive_absolute_jacobi below for the deliberately worse variant.
template <typename Real>
struct JacobiEigen {
    std::vector<Real> eigenvalues;          // ascending
    std::vector<std::vector<Real>> vectors;  // vectors[k] pairs with eigenvalues[k]
    int sweeps = 0;
};

template <typename Real>
JacobiEigen<Real> jacobi_eigen(std::vector<Real> a, std::size_t n, Real tol,
                               bool want_vectors = false, int max_sweeps = 100) {
    auto at = [&](std::size_t i, std::size_t j) -> Real& { return a[j * n + i]; };
    std::vector<std::vector<Real>> V;
    if (want_vectors) {
        V.assign(n, std::vector<Real>(n, Real(0)));
        for (std::size_t i = 0; i < n; ++i) V[i][i] = Real(1);  // V[col][row]
    }
    int sweeps = 0;
    for (; sweeps < max_sweeps; ++sweeps) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Real apq = at(p, q);
                if (apq == Real(0)) continue;
                Real app = at(p, p), aqq = at(q, q);
                using std::abs;
                using std::sqrt;
                if (abs(apq) <= tol * sqrt(abs(app * aqq))) continue;
                rotated = true;
                Real theta = (aqq - app) / (Real(2) * apq);
                Real t = (theta >= Real(0) ? Real(1) : Real(-1)) /
                         (abs(theta) + sqrt(Real(1) + theta * theta));
                Real c = Real(1) / sqrt(Real(1) + t * t);
                Real s = t * c;
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = Real(0);
                at(q, p) = Real(0);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    Real akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(p, k) = at(k, p);
                    at(k, q) = s * akp + c * akq;
                    at(q, k) = at(k, q);
                }
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        Real vkp = V[p][k], vkq = V[q][k];
                        V[p][k] = c * vkp - s * vkq;
                        V[q][k] = s * vkp + c * vkq;
                    }
                }
            }
        }
        if (!rotated) break;
    }
    if (sweeps >= max_sweeps)
        throw std::runtime_error("jacobi_eigen: oracle failed to converge");

    JacobiEigen<Real> out;
    out.sweeps = sweeps;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i + 1 < n; ++i) {  // insertion sort, deterministic
        std::size_t b = i;
        for (std::size_t j = i + 1; j < n; ++j)
            if (at(idx[j], idx[j]) < at(idx[b], idx[b])) b = j;
        std::swap(idx[i], idx[b]);
    }
    out.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = at(idx[i], idx[i]);
    if (want_vectors) {
        out.vectors.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.vectors[i] = std::move(V[idx[i]]);
    }
    return out;
}

// double-precision front end on DenseMatrix
JacobiEigen<double> oracle_eigen(const DenseMatrix& A, bool want_vectors = false);

// 80-bit x86 long double front end (eps ~ 1.08e-19); for n <= 32
JacobiEigen<long double> oracle_eigen_ld(const DenseMatrix& A);

// Deliberately naive demo: absolute off-diagonal stopping |a_pq| <= tol*||A||.
// Loses the tiny eigenvalues of graded matrices; used by `verify` to show
// what the relative-accuracy machinery buys.
std::vector<double> naive_absolute_jacobi(const DenseMatrix& A);

// signed inertia (n_neg, n_zero, n_pos) from oracle eigenvalues
struct Inertia {
    std::size_t neg = 0, zero = 0, pos = 0;
};
Inertia oracle_inertia(const DenseMatrix& A, double zero_tol);

}  // namespace jeig::harness
