#include "jeig/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jeig/errors.hpp"
#include "jeig/factor.hpp"

namespace jeig {

namespace {

constexpr double kEps = 2.220446049250313e-16;

// ||S||_2 for symmetric S: power iteration from several deterministic
// starts, keeping the largest Rayleigh magnitude seen
double sym_norm2(const DenseMatrix& S) {
    const std::size_t n = S.rows();
    if (n == 0) return 0.0;
    double fro = frobenius_norm(S);
    if (fro == 0.0) return 0.0;

    auto run_from = [&](std::vector<double> v) {
        double best = 0.0;
        std::vector<double> w(n);
        for (int it = 0; it < 200; ++it) {
            double nv = 0.0;
            for (double x : v) nv += x * x;
            nv = std::sqrt(nv);
            if (nv == 0.0) return best;
            for (auto& x : v) x /= nv;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) acc += S(i, j) * v[j];
                w[i] = acc;
            }
            double ray = 0.0, nw = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                ray += v[i] * w[i];
                nw += w[i] * w[i];
            }
            best = std::max(best, std::max(std::abs(ray), std::sqrt(nw)));
            v.swap(w);
        }
        return best;
    };

    std::vector<double> ones(n, 1.0), alt(n), rowsum(n);
    for (std::size_t i = 0; i < n; ++i) {
        alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += std::abs(S(i, j));
        rowsum[i] = acc;
    }
    double est = std::max({run_from(ones), run_from(alt), run_from(rowsum)});
    // ||S||_F / sqrt(n) is also a lower bound; take whichever is larger
    return std::max(est, fro / std::sqrt(static_cast<double>(n)));
}

void fill_metrics(SolveReport& rep, const DenseMatrix& H) {
    const std::size_t n = rep.n;
    const DenseMatrix& U = rep.eigenvectors;
    DenseMatrix utu = matmul(transpose(U), U);
    DenseMatrix uut = matmul(U, transpose(U));
    for (std::size_t i = 0; i < n; ++i) {
        utu(i, i) -= 1.0;
        uut(i, i) -= 1.0;
    }
    rep.metrics.orth_fro = frobenius_norm(utu);
    rep.metrics.orth_fro_rev = frobenius_norm(uut);

    DenseMatrix hu = matmul(H, U);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            hu(i, k) -= U(i, k) * rep.eigenvalues[k];
    rep.metrics.residual_rel = frobenius_norm(hu) / frobenius_norm(H);

    Theorem1Check t1 = check_theorem1(rep);
    rep.metrics.theorem1_bound = t1.bound;
    rep.metrics.theorem1_pass = t1.pass;
}

}  // namespace

SolveReport solve_symmetric(const DenseMatrix& H, Algorithm variant,
                            std::size_t p, double conv_tol,
                            std::size_t max_sweeps, const TraceSink& trace) {
    const std::size_t n = H.rows();
    if (H.cols() != n) throw std::invalid_argument("solve_symmetric: H not square");
    if (n == 0) throw std::invalid_argument("solve_symmetric: empty matrix");
    if (n == 1) {
        if (H(0, 0) == 0.0)
            throw rank_deficient_error("solve_symmetric: 1x1 zero matrix");
        SolveReport rep;
        rep.variant = variant;
        rep.n = 1;
        rep.p = 1;
        rep.converged = true;
        rep.eigenvalues = {H(0, 0)};
        rep.eigenvectors = DenseMatrix::identity(1);
        fill_metrics(rep, H);
        return rep;
    }

    IndefFactor f = bunch_parlett_complete(H);
    if (f.rank < n)
        throw rank_deficient_error(
            "solve_symmetric: factorization stopped at rank " +
            std::to_string(f.rank) + " of " + std::to_string(n));
    DenseMatrix F = restore_column_order(f);  // H = F' diag(J_P) F

    // engine wants the +1 rows leading; reorder rows of F stably by sign
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        if (f.J_P[k] > 0.0) order.push_back(k);
    for (std::size_t k = 0; k < n; ++k)
        if (f.J_P[k] < 0.0) order.push_back(k);
    DenseMatrix G(n, n);  // G = (sorted F)', so H = G J G'
    std::vector<double> js(n);
    for (std::size_t r = 0; r < n; ++r) {
        js[r] = f.J_P[order[r]];
        for (std::size_t c = 0; c < n; ++c) G(c, r) = F(order[r], c);
    }

    EngineConfig cfg;
    cfg.p = p;
    cfg.algorithm = variant;
    cfg.conv_tol = conv_tol;
    cfg.max_sweeps = max_sweeps;
    cfg.trace = trace;
    SolveReport rep = engine::run(G, SignVector(js), cfg);
    fill_metrics(rep, H);
    return rep;
}

Theorem1Check check_theorem1(const SolveReport& rep) {
    const std::size_t n = rep.n;
    DenseMatrix s = matmul(transpose(rep.eigenvectors), rep.eigenvectors);
    for (std::size_t i = 0; i < n; ++i) s(i, i) -= 1.0;

    Theorem1Check out;
    out.orth_norm2 = sym_norm2(s);
    double b = 14.0 * kEps * static_cast<double>(rep.stages) *
               std::sqrt(2.0 * static_cast<double>(rep.p) *
                         static_cast<double>(n));
    out.bound = b * (b + 2.0);
    if (out.bound == 0.0) {
        out.pass = out.orth_norm2 == 0.0;
        out.margin = out.pass ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        out.pass = out.orth_norm2 <= out.bound;
        out.margin = out.orth_norm2 / out.bound;
    }
    return out;
}

double scaled_condition(const DenseMatrix& H) {
    const std::size_t n = H.rows();
    if (H.cols() != n) throw std::invalid_argument("scaled_condition: not square");
    if (n == 0) throw std::invalid_argument("scaled_condition: empty matrix");
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (!(H(k, k) > 0.0))
            throw not_positive_definite_error(
                "scaled_condition: nonpositive diagonal entry");
        d[k] = std::sqrt(H(k, k));
    }
    if (n == 1) return 1.0;
    DenseMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        a(j, j) = 1.0;
        for (std::size_t i = 0; i < j; ++i) {
            double v = H(i, j) / (d[i] * d[j]);
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    SolveReport rep = solve_symmetric(a, Algorithm::HF, 1);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double lam : rep.eigenvalues) {
        if (!(lam > 0.0))
            throw not_positive_definite_error(
                "scaled_condition: scaled matrix is not positive definite");
        lo = std::min(lo, lam);
        hi = std::max(hi, lam);
    }
    return hi / lo;
}

RelAccuracy relative_accuracy_report(const std::vector<double>& computed,
                                     const std::vector<double>& reference) {
    if (computed.size() != reference.size())
        throw std::invalid_argument("relative_accuracy_report: size mismatch");
    std::vector<double> c = computed, r = reference;
    std::sort(c.begin(), c.end());
    std::sort(r.begin(), r.end());
    RelAccuracy out;
    out.per_eigenvalue.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (r[k] == 0.0)
            throw std::invalid_argument(
                "relative_accuracy_report: reference eigenvalue is zero");
        double rel = std::abs(c[k] - r[k]) / std::abs(r[k]);
        out.per_eigenvalue[k] = rel;
        out.max_rel = std::max(out.max_rel, rel);
    }
    return out;
}

}  // namespace jeig
