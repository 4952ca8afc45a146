#pragma once

#include <cstdint>

#include "jeig/matrix.hpp"

namespace jeig::harness {

// Symmetric test matrix: upper triangle (diagonal included) uniform in
// [-5, 5], mirrored below. Deterministic in the seed.
DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed);

// Graded relative-accuracy test matrix H = D A D with A = C C'/n + I/2
// (C uniform [-1,1], so kappa2(A) stays ~10) and D = diag(10^(14k/(n-1))):
// kappa2(H) blows up to ~1e28 while the scaled condition stays tame.
DenseMatrix graded_spd(std::size_t n, std::uint64_t seed);

// The grading diagonal used by graded_spd (for reporting).
std::vector<double> grading_diagonal(std::size_t n);

}  // namespace jeig::harness
