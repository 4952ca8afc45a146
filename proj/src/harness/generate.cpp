#include "jeig/harness/generate.hpp"

#include <cmath>

#include "jeig/harness/prng.hpp"

namespace jeig::harness {

DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
    Prng rng(seed);
    DenseMatrix H(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = rng.uniform(-5.0, 5.0);
            H(i, j) = v;
            H(j, i) = v;
        }
    return H;
}

std::vector<double> grading_diagonal(std::size_t n) {
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k)
        d[k] = n == 1 ? 1.0
                      : std::pow(10.0, 14.0 * static_cast<double>(k) /
                                            static_cast<double>(n - 1));
    return d;
}

DenseMatrix graded_spd(std::size_t n, std::uint64_t seed) {
    Prng rng(seed);
    DenseMatrix C(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) C(i, j) = rng.uniform(-1.0, 1.0);
    DenseMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += C(i, k) * C(j, k);
            double v = acc / static_cast<double>(n) + (i == j ? 0.5 : 0.0);
            A(i, j) = v;
            A(j, i) = v;
        }
    std::vector<double> d = grading_diagonal(n);
    DenseMatrix H(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = d[i] * A(i, j) * d[j];
            H(i, j) = v;
            H(j, i) = v;
        }
    return H;
}

}  // namespace jeig::harness
