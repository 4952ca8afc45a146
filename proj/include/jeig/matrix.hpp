#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace jeig {

// Column-major dense real matrix. Block columns are contiguous slabs, which
// is what the one-sided algorithms and the ring exchange want.
class DenseMatrix {
  public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), d_(rows * cols, 0.0) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return d_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return d_[j * rows_ + i]; }

    double* col(std::size_t j) { return d_.data() + j * rows_; }
    const double* col(std::size_t j) const { return d_.data() + j * rows_; }

    double* data() { return d_.data(); }
    const double* data() const { return d_.data(); }

    bool all_finite() const;

  private:
    std::size_t rows_, cols_;
    std::vector<double> d_;
};

bool operator==(const DenseMatrix& a, const DenseMatrix& b);

// Diagonal signature J: entries are exactly -1 or +1.
struct SignVector {
    std::vector<double> signs;
    std::size_t n_pos = 0;

    SignVector() = default;
    explicit SignVector(std::vector<double> s);
    static SignVector ones(std::size_t n);

    std::size_t size() const { return signs.size(); }
    double operator[](std::size_t k) const { return signs[k]; }
};

// 0-based bijection on {0..k-1}.
struct Permutation {
    std::vector<std::size_t> perm;

    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> p);
    static Permutation identity(std::size_t k);

    std::size_t size() const { return perm.size(); }
    std::size_t operator[](std::size_t k) const { return perm[k]; }
    bool is_identity() const;
};

// Partition of n columns into 2p block columns, widths as uniform as
// possible (wider blocks first).
struct BlockPartition {
    std::size_t n = 0;
    std::size_t p = 0;
    std::vector<std::size_t> widths;
    std::vector<std::size_t> offsets;  // prefix sums, size 2p+1
};

BlockPartition make_partition(std::size_t n, std::size_t p);

// X * diag(J) * X^T, contracting over columns of X. Output is exactly
// symmetric (upper triangle computed, mirrored).
DenseMatrix gram_with_signs(const DenseMatrix& X, const SignVector& J);

double frobenius_norm(const DenseMatrix& A);
double offdiag_frobenius(const DenseMatrix& A);

DenseMatrix transpose(const DenseMatrix& A);
DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B);

bool is_symmetric(const DenseMatrix& A, double tol = 0.0);

}  // namespace jeig
