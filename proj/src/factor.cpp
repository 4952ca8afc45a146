#include "jeig/factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jeig/errors.hpp"
#include "jeig/rotations.hpp"

namespace jeig {

namespace {

constexpr double kEps = 2.220446049250313e-16;  // 2^-52

Permutation invert_positions(const std::vector<std::size_t>& orig) {
    // orig[m] = original index at factor position m  ->  P[k] = position of k
    std::vector<std::size_t> inv(orig.size());
    for (std::size_t m = 0; m < orig.size(); ++m) inv[orig[m]] = m;
    return Permutation(std::move(inv));
}

void symmetric_swap(DenseMatrix& W, std::size_t a, std::size_t b) {
    if (a == b) return;
    std::size_t n = W.rows();
    for (std::size_t i = 0; i < n; ++i) std::swap(W(i, a), W(i, b));
    for (std::size_t j = 0; j < n; ++j) std::swap(W(a, j), W(b, j));
}

}  // namespace

IndefFactor bunch_parlett_complete(const DenseMatrix& A) {
    std::size_t n = A.rows();
    if (n != A.cols() || !is_symmetric(A, 0.0))
        throw std::invalid_argument("bunch_parlett_complete: input not symmetric");

    const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;
    DenseMatrix W = A;
    DenseMatrix R(n, n);
    std::vector<std::size_t> orig(n);
    for (std::size_t i = 0; i < n; ++i) orig[i] = i;
    std::vector<double> signs;
    signs.reserve(n);

    // Truncation fires on exact cancellation only. A magnitude cutoff
    // relative to the largest initial pivot would chop the genuinely tiny
    // (but meaningful) trailing pivots of strongly graded matrices and ruin
    // their relative accuracy, so it is deliberately not used here.

    auto swap_to = [&](std::size_t pos, std::size_t q) {
        if (pos == q) return;
        symmetric_swap(W, pos, q);
        std::swap(orig[pos], orig[q]);
        for (std::size_t r = 0; r < signs.size(); ++r) std::swap(R(r, pos), R(r, q));
    };

    std::size_t m = 0;
    while (m < n) {
        // complete-pivot scan of the trailing submatrix
        double mu0 = -1.0;
        std::size_t i0 = m;
        for (std::size_t i = m; i < n; ++i) {
            double v = std::abs(W(i, i));
            if (v > mu0) {
                mu0 = v;
                i0 = i;
            }
        }
        double mu1 = 0.0;
        std::size_t s = m, t = m;
        for (std::size_t j = m + 1; j < n; ++j) {
            for (std::size_t i = m; i < j; ++i) {
                double v = std::abs(W(i, j));
                if (v > mu1) {
                    mu1 = v;
                    s = i;
                    t = j;
                }
            }
        }
        if (std::max(mu0, mu1) == 0.0) break;

        if (mu0 >= alpha * mu1) {
            swap_to(m, i0);
            double d = W(m, m);
            double j_m = d > 0.0 ? 1.0 : -1.0;
            double sq = std::sqrt(std::abs(d));
            R(m, m) = sq;
            for (std::size_t k = m + 1; k < n; ++k) R(m, k) = W(m, k) * j_m / sq;
            for (std::size_t i = m + 1; i < n; ++i) {
                for (std::size_t k = i; k < n; ++k) {
                    double v = W(i, k) - W(m, i) * W(m, k) / d;
                    W(i, k) = v;
                    W(k, i) = v;
                }
            }
            signs.push_back(j_m);
            m += 1;
        } else {
            swap_to(m, s);
            swap_to(m + 1, t);
            double e11 = W(m, m), e22 = W(m + 1, m + 1), e12 = W(m, m + 1);
            // 2x2 eigendecomposition; complete pivoting guarantees the block
            // is strictly indefinite (det = e11*e22 - e12^2 < 0)
            RotationParams rot = trig_params(e11, e22, e12);
            double c = rot.c, sn_ = rot.s;
            double d1 = c * c * e11 - 2.0 * c * sn_ * e12 + sn_ * sn_ * e22;
            double d2 = sn_ * sn_ * e11 + 2.0 * c * sn_ * e12 + c * c * e22;
            double lp, ln, vp0, vp1, vn0, vn1;
            if (d1 >= d2) {
                lp = d1;
                vp0 = c;
                vp1 = -sn_;
                ln = d2;
                vn0 = sn_;
                vn1 = c;
            } else {
                lp = d2;
                vp0 = sn_;
                vp1 = c;
                ln = d1;
                vn0 = c;
                vn1 = -sn_;
            }
            double sp = std::sqrt(lp);
            double sq = std::sqrt(-ln);
            R(m, m) = sp * vp0;
            R(m, m + 1) = sp * vp1;
            R(m + 1, m) = sq * vn0;
            R(m + 1, m + 1) = sq * vn1;
            for (std::size_t k = m + 2; k < n; ++k) {
                double c0 = W(m, k), c1 = W(m + 1, k);
                R(m, k) = (vp0 * c0 + vp1 * c1) / sp;
                R(m + 1, k) = -(vn0 * c0 + vn1 * c1) / sq;
            }
            for (std::size_t i = m + 2; i < n; ++i) {
                for (std::size_t k = i; k < n; ++k) {
                    double v = W(i, k) - (R(m, i) * R(m, k) - R(m + 1, i) * R(m + 1, k));
                    W(i, k) = v;
                    W(k, i) = v;
                }
            }
            signs.push_back(1.0);
            signs.push_back(-1.0);
            m += 2;
        }
    }

    IndefFactor out;
    out.rank = m;
    DenseMatrix Rt(m, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) Rt(i, j) = R(i, j);
    out.R = std::move(Rt);
    out.J_P = SignVector(std::move(signs));
    out.P = invert_positions(orig);
    return out;
}

DenseMatrix restore_column_order(const IndefFactor& F) {
    std::size_t n = F.P.size();
    DenseMatrix out(F.R.rows(), n);
    for (std::size_t k = 0; k < n; ++k) {
        const double* src = F.R.col(F.P[k]);
        double* dst = out.col(k);
        for (std::size_t i = 0; i < F.R.rows(); ++i) dst[i] = src[i];
    }
    return out;
}

CholFactor cholesky_unpivoted(const DenseMatrix& A) {
    std::size_t n = A.rows();
    if (n != A.cols()) throw std::invalid_argument("cholesky: non-square");
    DenseMatrix R(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double d = A(k, k);
        for (std::size_t r = 0; r < k; ++r) d -= R(r, k) * R(r, k);
        if (!(d > 0.0))
            throw not_positive_definite_error("cholesky: non-positive pivot");
        double rkk = std::sqrt(d);
        R(k, k) = rkk;
        for (std::size_t j = k + 1; j < n; ++j) {
            double v = A(k, j);
            for (std::size_t r = 0; r < k; ++r) v -= R(r, k) * R(r, j);
            R(k, j) = v / rkk;
        }
    }
    return {std::move(R), Permutation::identity(n)};
}

CholFactor cholesky_diag_pivoted(const DenseMatrix& A) {
    std::size_t n = A.rows();
    if (n != A.cols()) throw std::invalid_argument("cholesky: non-square");
    DenseMatrix W = A;
    DenseMatrix R(n, n);
    std::vector<std::size_t> orig(n);
    for (std::size_t i = 0; i < n; ++i) orig[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t q = k;
        double best = W(k, k);
        for (std::size_t i = k + 1; i < n; ++i)
            if (W(i, i) > best) {
                best = W(i, i);
                q = i;
            }
        if (q != k) {
            symmetric_swap(W, k, q);
            std::swap(orig[k], orig[q]);
            for (std::size_t r = 0; r < k; ++r) std::swap(R(r, k), R(r, q));
        }
        double d = W(k, k);
        if (!(d > 0.0))
            throw not_positive_definite_error("pivoted cholesky: non-positive pivot");
        double rkk = std::sqrt(d);
        R(k, k) = rkk;
        for (std::size_t j = k + 1; j < n; ++j) R(k, j) = W(k, j) / rkk;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                double v = W(i, j) - R(k, i) * R(k, j);
                W(i, j) = v;
                W(j, i) = v;
            }
        }
    }
    return {std::move(R), invert_positions(orig)};
}

namespace {

// reverse factor columns together with the position map
void reverse_factor_columns(DenseMatrix& R, Permutation& P) {
    std::size_t n = R.cols();
    for (std::size_t j = 0; j < n / 2; ++j) {
        double* a = R.col(j);
        double* b = R.col(n - 1 - j);
        for (std::size_t i = 0; i < R.rows(); ++i) std::swap(a[i], b[i]);
    }
    for (std::size_t k = 0; k < P.perm.size(); ++k)
        P.perm[k] = n - 1 - P.perm[k];
}

}  // namespace

CholFactor cholesky_sign_pivoted(const DenseMatrix& A_P, const SignVector& J_P) {
    std::size_t n = A_P.rows();
    if (J_P.size() != n)
        throw std::invalid_argument("sign-pivoted cholesky: J length mismatch");
    for (std::size_t k = 1; k < n; ++k)
        if (J_P[k - 1] < J_P[k])
            throw std::invalid_argument("sign-pivoted cholesky: J not sorted (+ first)");
    std::size_t npos = J_P.n_pos;

    if (npos == n) return cholesky_diag_pivoted(A_P);
    if (npos == 0) {
        CholFactor f = cholesky_diag_pivoted(A_P);
        reverse_factor_columns(f.R, f.P);
        return f;
    }

    std::size_t nneg = n - npos;
    DenseMatrix A11(npos, npos), A12(npos, nneg), A22(nneg, nneg);
    for (std::size_t j = 0; j < npos; ++j)
        for (std::size_t i = 0; i < npos; ++i) A11(i, j) = A_P(i, j);
    for (std::size_t j = 0; j < nneg; ++j)
        for (std::size_t i = 0; i < npos; ++i) A12(i, j) = A_P(i, npos + j);
    for (std::size_t j = 0; j < nneg; ++j)
        for (std::size_t i = 0; i < nneg; ++i) A22(i, j) = A_P(npos + i, npos + j);

    CholFactor f1 = cholesky_diag_pivoted(A11);

    // R11' R12 = P1' A12 by forward substitution (P1'A12 row i = A12 row with
    // original index sitting at factor position i)
    std::vector<std::size_t> orig1(npos);
    for (std::size_t k = 0; k < npos; ++k) orig1[f1.P[k]] = k;
    DenseMatrix R12(npos, nneg);
    for (std::size_t j = 0; j < nneg; ++j) {
        for (std::size_t i = 0; i < npos; ++i) {
            double v = A12(orig1[i], j);
            for (std::size_t r = 0; r < i; ++r) v -= f1.R(r, i) * R12(r, j);
            R12(i, j) = v / f1.R(i, i);
        }
    }

    DenseMatrix S(nneg, nneg);
    for (std::size_t j = 0; j < nneg; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            double v = A22(i, j);
            for (std::size_t r = 0; r < npos; ++r) v -= R12(r, i) * R12(r, j);
            S(i, j) = v;
            S(j, i) = v;
        }
    }

    CholFactor f2 = cholesky_diag_pivoted(S);  // throws if S lost definiteness

    // apply P2 to R12 from the right, then reverse the whole second block
    DenseMatrix R12p(npos, nneg);
    for (std::size_t j = 0; j < nneg; ++j) {
        std::size_t srcj = 0;
        for (std::size_t k = 0; k < nneg; ++k)
            if (f2.P[k] == j) {
                srcj = k;
                break;
            }
        // column j of the permuted block is the original column whose factor
        // position is j
        for (std::size_t i = 0; i < npos; ++i) R12p(i, j) = R12(i, srcj);
    }
    // reversal of block-two columns: factor column j (within block) becomes
    // nneg-1-j for both R12p, R22 and the P2 map
    Permutation P2 = f2.P;
    DenseMatrix R22 = f2.R;
    for (std::size_t j = 0; j < nneg / 2; ++j) {
        for (std::size_t i = 0; i < npos; ++i)
            std::swap(R12p(i, j), R12p(i, nneg - 1 - j));
        for (std::size_t i = 0; i < nneg; ++i)
            std::swap(R22(i, j), R22(i, nneg - 1 - j));
    }
    for (std::size_t k = 0; k < nneg; ++k) P2.perm[k] = nneg - 1 - P2.perm[k];

    DenseMatrix R(n, n);
    for (std::size_t j = 0; j < npos; ++j)
        for (std::size_t i = 0; i <= j; ++i) R(i, j) = f1.R(i, j);
    for (std::size_t j = 0; j < nneg; ++j) {
        for (std::size_t i = 0; i < npos; ++i) R(i, npos + j) = R12p(i, j);
        for (std::size_t i = 0; i < nneg; ++i) R(npos + i, npos + j) = R22(i, j);
    }
    std::vector<std::size_t> pv(n);
    for (std::size_t k = 0; k < npos; ++k) pv[k] = f1.P[k];
    for (std::size_t k = 0; k < nneg; ++k) pv[npos + k] = npos + P2[k];
    return {std::move(R), Permutation(std::move(pv))};
}

QRFull qr_full(const DenseMatrix& A) {
    std::size_t m = A.rows(), k = A.cols();
    if (m < k) throw std::invalid_argument("qr_full: need rows >= cols");
    DenseMatrix W = A;
    DenseMatrix Q = DenseMatrix::identity(m);
    std::vector<double> v(m);
    for (std::size_t j = 0; j < k; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < m; ++i) norm += W(i, j) * W(i, j);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        double x0 = W(j, j);
        double alpha = x0 >= 0.0 ? -norm : norm;
        double v0 = x0 - alpha;
        double vnorm2 = v0 * v0;
        v[j] = v0;
        for (std::size_t i = j + 1; i < m; ++i) {
            v[i] = W(i, j);
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        double beta = 2.0 / vnorm2;
        // W := (I - beta v v') W on trailing columns
        for (std::size_t c = j; c < k; ++c) {
            double dot = 0.0;
            for (std::size_t i = j; i < m; ++i) dot += v[i] * W(i, c);
            dot *= beta;
            for (std::size_t i = j; i < m; ++i) W(i, c) -= dot * v[i];
        }
        // Q := Q (I - beta v v')
        for (std::size_t r = 0; r < m; ++r) {
            double dot = 0.0;
            for (std::size_t i = j; i < m; ++i) dot += Q(r, i) * v[i];
            dot *= beta;
            for (std::size_t i = j; i < m; ++i) Q(r, i) -= dot * v[i];
        }
    }
    // clean the subdiagonal noise so [T; 0] is exact
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = j + 1; i < m; ++i) W(i, j) = 0.0;
    QRFull out;
    out.Q = std::move(Q);
    DenseMatrix T(k, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i <= j; ++i) T(i, j) = W(i, j);
    out.T = std::move(T);
    return out;
}

DenseMatrix qr_of_trapezoid(const DenseMatrix& Rt) {
    if (Rt.rows() < Rt.cols())
        throw std::invalid_argument("qr_of_trapezoid: more columns than rows");
    QRFull f = qr_full(Rt);
    std::size_t k = Rt.cols();
    double maxd = 0.0;
    for (std::size_t i = 0; i < k; ++i) maxd = std::max(maxd, std::abs(f.T(i, i)));
    if (maxd == 0.0)
        throw rank_deficient_error("qr_of_trapezoid: zero input");
    for (std::size_t i = 0; i < k; ++i)
        if (std::abs(f.T(i, i)) <= static_cast<double>(Rt.rows()) * kEps * maxd)
            throw rank_deficient_error("qr_of_trapezoid: input not full column rank");
    return f.T;
}

}  // namespace jeig
