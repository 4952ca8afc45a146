#include "jeig/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace jeig {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), d_(std::move(data)) {
    if (d_.size() != rows_ * cols_)
        throw std::invalid_argument("DenseMatrix: data length != rows*cols");
    if (!all_finite())
        throw std::invalid_argument("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double v : d_)
        if (!std::isfinite(v)) return false;
    return true;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const double* pa = a.data();
    const double* pb = b.data();
    std::size_t len = a.rows() * a.cols();
    for (std::size_t k = 0; k < len; ++k)
        if (pa[k] != pb[k]) return false;
    return true;
}

SignVector::SignVector(std::vector<double> s) : signs(std::move(s)) {
    for (double v : signs) {
        if (v == 1.0)
            ++n_pos;
        else if (v != -1.0)
            throw std::invalid_argument("SignVector: entry not in {-1,+1}");
    }
}

SignVector SignVector::ones(std::size_t n) {
    return SignVector(std::vector<double>(n, 1.0));
}

Permutation::Permutation(std::vector<std::size_t> p) : perm(std::move(p)) {
    std::vector<char> seen(perm.size(), 0);
    for (std::size_t v : perm) {
        if (v >= perm.size() || seen[v])
            throw std::invalid_argument("Permutation: not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(std::size_t k) {
    std::vector<std::size_t> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = i;
    return Permutation(std::move(p));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != i) return false;
    return true;
}

BlockPartition make_partition(std::size_t n, std::size_t p) {
    if (p < 1 || n < 2 * p)
        throw std::invalid_argument("make_partition: need n >= 2p >= 2");
    std::size_t nb = 2 * p;
    std::size_t q = n / nb, rem = n % nb;
    BlockPartition part;
    part.n = n;
    part.p = p;
    part.widths.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) part.widths[b] = b < rem ? q + 1 : q;
    part.offsets.resize(nb + 1, 0);
    for (std::size_t b = 0; b < nb; ++b)
        part.offsets[b + 1] = part.offsets[b] + part.widths[b];
    return part;
}

DenseMatrix gram_with_signs(const DenseMatrix& X, const SignVector& J) {
    if (J.size() != X.cols())
        throw std::invalid_argument("gram_with_signs: J length != cols");
    std::size_t m = X.rows(), n = X.cols();
    DenseMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += X(i, k) * J[k] * X(j, k);
            out(i, j) = acc;
            out(j, i) = acc;
        }
    }
    return out;
}

double frobenius_norm(const DenseMatrix& A) {
    double acc = 0.0;
    const double* d = A.data();
    std::size_t len = A.rows() * A.cols();
    for (std::size_t k = 0; k < len; ++k) acc += d[k] * d[k];
    return std::sqrt(acc);
}

double offdiag_frobenius(const DenseMatrix& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("offdiag_frobenius: non-square");
    double acc = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i)
            if (i != j) acc += A(i, j) * A(i, j);
    return std::sqrt(acc);
}

DenseMatrix transpose(const DenseMatrix& A) {
    DenseMatrix out(A.cols(), A.rows());
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i) out(j, i) = A(i, j);
    return out;
}

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("matmul: shape mismatch");
    DenseMatrix out(A.rows(), B.cols());
    // j-k-i loops keep column-major access contiguous
    for (std::size_t j = 0; j < B.cols(); ++j) {
        double* oc = out.col(j);
        for (std::size_t k = 0; k < A.cols(); ++k) {
            double bkj = B(k, j);
            if (bkj == 0.0) continue;
            const double* ac = A.col(k);
            for (std::size_t i = 0; i < A.rows(); ++i) oc[i] += ac[i] * bkj;
        }
    }
    return out;
}

bool is_symmetric(const DenseMatrix& A, double tol) {
    if (A.rows() != A.cols()) return false;
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (std::abs(A(i, j) - A(j, i)) > tol) return false;
    return true;
}

}  // namespace jeig
