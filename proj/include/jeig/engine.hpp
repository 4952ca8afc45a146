#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "jeig/matrix.hpp"

namespace jeig {

// First letter: T = trigonometric (works on H = G J G'), H = hyperbolic
// (works on the pair (G'G, J)). B = block-oriented (one inner pass per
// step, full annihilation only on the first step of a sweep), F = full
// block (inner diagonalization every step). Trailing C = column-pivoted
// factorization without restoring column order; SC = sign-respecting
// pivoted Cholesky.
enum class Algorithm { TB, TBC, TF, TFC, HB, HBC, HBSC, HF, HFC, HFSC };

bool is_trigonometric(Algorithm a);
bool is_full_block(Algorithm a);
bool is_pivoted(Algorithm a);       // any C or SC variant
bool is_sign_pivoted(Algorithm a);  // SC variants only
const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);  // case-insensitive
std::vector<Algorithm> all_algorithms();

// Per-step trace record; the sink is called from worker threads under an
// internal lock, so arrival order across workers is unspecified.
struct TraceRecord {
    std::size_t rank = 0;
    std::size_t sweep = 0;  // 1-based
    std::size_t step = 0;   // 0-based within the sweep
    std::size_t i_blk = 0;
    std::size_t j_blk = 0;
    std::size_t rotations = 0;
};
using TraceSink = std::function<void(const TraceRecord&)>;

struct MetricsBlock {
    double orth_fro = 0.0;      // ||U'U - I||_F
    double orth_fro_rev = 0.0;  // ||UU' - I||_F
    double residual_rel = 0.0;  // ||HU - U Lambda||_F / ||H||_F
    double theorem1_bound = 0.0;
    double kappa2_A = 0.0;  // optional scaled condition, 0 when not computed
    bool theorem1_pass = false;
};

struct SolveReport {
    std::vector<double> eigenvalues;  // by global column index
    DenseMatrix eigenvectors;         // column k pairs with eigenvalues[k]
    std::size_t sweeps = 0;
    std::size_t stages = 0;  // sequential transformation depth; feeds the
                             // a-priori orthogonality bound (conservative)
    std::size_t rotations = 0;
    std::size_t rescues = 0;  // singular-pivot QR embeddings taken
    std::size_t sortedness_violations = 0;  // descents of |lambda| broken
    double time_ms = 0.0;  // wall time of the iteration itself
    bool converged = false;
    Algorithm variant = Algorithm::TF;
    std::size_t n = 0;
    std::size_t p = 0;
    MetricsBlock metrics;  // filled by the solver facade, zero from the engine
};

struct EngineConfig {
    std::size_t p = 1;
    Algorithm algorithm = Algorithm::TF;
    double conv_tol = 0.0;  // <= 0 selects the default sqrt(n) * eps
    std::size_t max_sweeps = 50;
    TraceSink trace;  // optional
};

namespace engine {

// Diagonalizes H = G J G' given its square nonsingular factor G and the
// sorted signature J (+1 entries first). Runs cfg.p workers over 2p block
// columns; all cross-worker interaction is a deterministic rendezvous
// exchange, so identical inputs give bitwise-identical reports.
SolveReport run(const DenseMatrix& G, const SignVector& J,
                const EngineConfig& cfg);

}  // namespace engine

}  // namespace jeig
