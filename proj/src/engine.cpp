#include "jeig/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstring>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "jeig/errors.hpp"
#include "jeig/factor.hpp"
#include "jeig/inner_jacobi.hpp"
#include "jeig/pivot_strategy.hpp"

namespace jeig {

bool is_trigonometric(Algorithm a) {
    switch (a) {
        case Algorithm::TB:
        case Algorithm::TBC:
        case Algorithm::TF:
        case Algorithm::TFC:
            return true;
        default:
            return false;
    }
}

bool is_full_block(Algorithm a) {
    switch (a) {
        case Algorithm::TF:
        case Algorithm::TFC:
        case Algorithm::HF:
        case Algorithm::HFC:
        case Algorithm::HFSC:
            return true;
        default:
            return false;
    }
}

bool is_pivoted(Algorithm a) {
    switch (a) {
        case Algorithm::TBC:
        case Algorithm::TFC:
        case Algorithm::HBC:
        case Algorithm::HFC:
        case Algorithm::HBSC:
        case Algorithm::HFSC:
            return true;
        default:
            return false;
    }
}

bool is_sign_pivoted(Algorithm a) {
    return a == Algorithm::HBSC || a == Algorithm::HFSC;
}

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::TB: return "TB";
        case Algorithm::TBC: return "TBC";
        case Algorithm::TF: return "TF";
        case Algorithm::TFC: return "TFC";
        case Algorithm::HB: return "HB";
        case Algorithm::HBC: return "HBC";
        case Algorithm::HBSC: return "HBSC";
        case Algorithm::HF: return "HF";
        case Algorithm::HFC: return "HFC";
        case Algorithm::HFSC: return "HFSC";
    }
    return "?";
}

std::vector<Algorithm> all_algorithms() {
    return {Algorithm::TB, Algorithm::TBC, Algorithm::TF,  Algorithm::TFC,
            Algorithm::HB, Algorithm::HBC, Algorithm::HBSC, Algorithm::HF,
            Algorithm::HFC, Algorithm::HFSC};
}

Algorithm algorithm_from_name(const std::string& name) {
    std::string low;
    low.reserve(name.size());
    for (char c : name) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (Algorithm a : all_algorithms()) {
        std::string cand = algorithm_name(a);
        for (char& c : cand) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (cand == low) return a;
    }
    throw std::invalid_argument("unknown algorithm name: " + name);
}

namespace engine {
namespace {

constexpr double kEps = 2.220446049250313e-16;

struct AbortRun {};  // unwinds workers after another worker failed

struct Slab {
    std::size_t blk = 0;  // 1-based global block index
    DenseMatrix g;
    DenseMatrix u;               // trig only
    std::vector<double> signs;   // hyperbolic only: traveling column signs
};

struct Shared;

struct Mailbox {
    std::mutex m;
    std::condition_variable cv;
    bool full = false;
    Slab item;

    void put(Slab s, const std::atomic<bool>& failed) {
        std::unique_lock<std::mutex> lk(m);
        cv.wait(lk, [&] { return !full || failed.load(); });
        if (failed.load()) throw AbortRun{};
        item = std::move(s);
        full = true;
        cv.notify_all();
    }
    Slab take(const std::atomic<bool>& failed) {
        std::unique_lock<std::mutex> lk(m);
        cv.wait(lk, [&] { return full || failed.load(); });
        if (failed.load()) throw AbortRun{};
        Slab s = std::move(item);
        full = false;
        cv.notify_all();
        return s;
    }
    void poke() {
        std::lock_guard<std::mutex> lk(m);
        cv.notify_all();
    }
};

// Sweep-end barrier carrying the OR of per-worker "anything rotated".
struct SweepBarrier {
    std::mutex m;
    std::condition_variable cv;
    std::size_t p = 0;
    std::size_t count = 0;
    std::size_t generation = 0;
    bool any = false;
    bool out = false;

    bool arrive(bool local, const std::atomic<bool>& failed) {
        std::unique_lock<std::mutex> lk(m);
        any = any || local;
        std::size_t gen = generation;
        if (++count == p) {
            out = any;
            any = false;
            count = 0;
            ++generation;
            cv.notify_all();
            return out;
        }
        cv.wait(lk, [&] { return generation != gen || failed.load(); });
        if (generation == gen) throw AbortRun{};  // woken by failure only
        return out;
    }
    void poke() {
        std::lock_guard<std::mutex> lk(m);
        cv.notify_all();
    }
};

struct WorkerOut {
    Slab a, b;
    std::vector<std::size_t> stage_contrib;  // one entry per executed step
    std::size_t rotations = 0;
    std::size_t rescues = 0;
    std::size_t sweeps = 0;
    bool converged = false;
};

struct Shared {
    BlockPartition part;
    const SignVector* J = nullptr;  // global signature (trig contraction)
    SignVector ones;                // Euclidean weights for hyperbolic Grams
    double tol = 0.0;
    std::size_t p = 0, n = 0, steps = 0, max_sweeps = 0;
    bool trig = false, full_block = false, pivoted = false, sign_pivoted = false;

    std::vector<std::unique_ptr<Mailbox>> inbox;
    SweepBarrier barrier;
    std::atomic<bool> failed{false};
    std::mutex err_m;
    std::vector<std::exception_ptr> errors;  // slot per rank
    std::mutex trace_m;
    TraceSink trace;
    std::vector<WorkerOut> out;

    void fail(std::size_t rank, std::exception_ptr e) {
        {
            std::lock_guard<std::mutex> lk(err_m);
            if (!errors[rank]) errors[rank] = std::move(e);
        }
        failed.store(true);
        for (auto& mb : inbox) mb->poke();
        barrier.poke();
    }
};

void copy_cols(DenseMatrix& dst, std::size_t dst0, const DenseMatrix& src,
               std::size_t src0, std::size_t cnt) {
    std::memcpy(dst.col(dst0), src.col(src0), sizeof(double) * src.rows() * cnt);
}

struct StepStats {
    std::size_t rots = 0;
    std::size_t contrib = 0;  // sequential transformation depth of the step
    bool rescued = false;
    bool active = false;
};

StepStats trig_step(Slab& A, Slab& B, std::size_t step, const Shared& sh) {
    const std::size_t wa = A.g.cols(), wb = B.g.cols();
    const std::size_t np = wa + wb, n = sh.n;
    DenseMatrix mp(n, np);
    copy_cols(mp, 0, A.g, 0, wa);
    copy_cols(mp, wa, B.g, 0, wb);

    DenseMatrix hp = gram_with_signs(transpose(mp), *sh.J);
    IndefFactor bp = bunch_parlett_complete(hp);

    StepStats st;
    InnerResult ir;
    DenseMatrix up;
    if (bp.rank == 0) {
        // zero pivot block: nothing to rotate
        return st;
    }
    if (bp.rank == np) {
        DenseMatrix w = sh.pivoted ? std::move(bp.R) : restore_column_order(bp);
        DenseMatrix rw = transpose(w);
        const bool full = sh.full_block || step == 0;
        InnerScope scope =
            full ? InnerScope::full_offdiag() : InnerScope::offdiag_block(wa);
        InnerMode mode =
            sh.full_block ? InnerMode::diagonalize : InnerMode::one_sweep;
        ir = inner_sweep_trig(rw, bp.J_P, scope, mode, sh.tol);
        up = std::move(ir.Q_acc);
    } else {
        // singular pivot: factor the trapezoid, diagonalize the square core,
        // embed the rotation next to an identity on the null directions
        DenseMatrix w = sh.pivoted ? std::move(bp.R) : restore_column_order(bp);
        DenseMatrix wt = transpose(w);  // np x rank
        qr_of_trapezoid(wt);            // full-column-rank guard
        QRFull qr = qr_full(wt);
        ir = inner_sweep_trig(qr.T, bp.J_P, InnerScope::full_offdiag(),
                              InnerMode::diagonalize, sh.tol);
        DenseMatrix emb = DenseMatrix::identity(np);
        for (std::size_t j = 0; j < bp.rank; ++j)
            for (std::size_t i = 0; i < bp.rank; ++i) emb(i, j) = ir.Q_acc(i, j);
        up = matmul(qr.Q, emb);
        st.rescued = true;
    }
    if (sh.pivoted) apply_permutation_rows(up, bp.P);

    st.rots = ir.rotations_used;
    // rescue charges one stage per Householder reflector of the embedding
    st.contrib = st.rots + (st.rescued ? bp.rank : 0);
    st.active = st.rescued || st.rots > 0;

    const bool identity_up =
        !st.rescued && st.rots == 0 && (!sh.pivoted || bp.P.is_identity());
    if (!identity_up) {
        DenseMatrix g2 = matmul(mp, up);
        copy_cols(A.g, 0, g2, 0, wa);
        copy_cols(B.g, 0, g2, wa, wb);
        DenseMatrix uu(n, np);
        copy_cols(uu, 0, A.u, 0, wa);
        copy_cols(uu, wa, B.u, 0, wb);
        DenseMatrix u2 = matmul(uu, up);
        copy_cols(A.u, 0, u2, 0, wa);
        copy_cols(B.u, 0, u2, wa, wb);
    }
    return st;
}

StepStats hyp_step(Slab& A, Slab& B, std::size_t step, const Shared& sh) {
    const std::size_t wa = A.g.cols(), wb = B.g.cols();
    const std::size_t np = wa + wb, n = sh.n;
    DenseMatrix mp(n, np);
    copy_cols(mp, 0, A.g, 0, wa);
    copy_cols(mp, wa, B.g, 0, wb);

    std::vector<double> jp(np);
    for (std::size_t k = 0; k < wa; ++k) jp[k] = A.signs[k];
    for (std::size_t k = 0; k < wb; ++k) jp[wa + k] = B.signs[k];

    DenseMatrix ap = gram_with_signs(transpose(mp), sh.ones);

    // sign-pivoted factorization needs the pair's signs partitioned (+ block
    // first); traveling signs may arrive interleaved, so pre-sort stably
    std::vector<std::size_t> pi(np);
    for (std::size_t k = 0; k < np; ++k) pi[k] = k;
    if (sh.sign_pivoted) {
        std::size_t w = 0;
        for (std::size_t k = 0; k < np; ++k)
            if (jp[k] > 0.0) pi[w++] = k;
        for (std::size_t k = 0; k < np; ++k)
            if (jp[k] < 0.0) pi[w++] = k;
    }
    bool presorted = true;
    for (std::size_t k = 0; k < np; ++k)
        if (pi[k] != k) {
            presorted = false;
            break;
        }

    DenseMatrix ap_s;
    std::vector<double> jp_s;
    if (presorted) {
        ap_s = std::move(ap);
        jp_s = jp;
    } else {
        ap_s = DenseMatrix(np, np);
        jp_s.resize(np);
        for (std::size_t b = 0; b < np; ++b) {
            jp_s[b] = jp[pi[b]];
            for (std::size_t a = 0; a < np; ++a) ap_s(a, b) = ap(pi[a], pi[b]);
        }
    }

    CholFactor ch = sh.sign_pivoted
                        ? cholesky_sign_pivoted(ap_s, SignVector(jp_s))
                        : (sh.pivoted ? cholesky_diag_pivoted(ap_s)
                                      : cholesky_unpivoted(ap_s));

    std::vector<double> j_inner(np);
    for (std::size_t k = 0; k < np; ++k) j_inner[ch.P[k]] = jp_s[k];

    const bool full = sh.full_block || step == 0;
    InnerScope scope =
        full ? InnerScope::full_offdiag() : InnerScope::offdiag_block(wa);
    InnerMode mode = sh.full_block ? InnerMode::diagonalize : InnerMode::one_sweep;
    InnerResult ir =
        inner_sweep_hyp(ch.R, SignVector(j_inner), scope, mode, sh.tol);

    // row fix: pair coordinate c was sorted slot inv_pi[c], whose factor
    // column is ch.P[inv_pi[c]]
    std::vector<std::size_t> row_map(np);
    if (presorted) {
        for (std::size_t k = 0; k < np; ++k) row_map[k] = ch.P[k];
    } else {
        std::vector<std::size_t> inv_pi(np);
        for (std::size_t a = 0; a < np; ++a) inv_pi[pi[a]] = a;
        for (std::size_t c = 0; c < np; ++c) row_map[c] = ch.P[inv_pi[c]];
    }
    Permutation total(row_map);
    DenseMatrix up = std::move(ir.Q_acc);
    apply_permutation_rows(up, total);

    StepStats st;
    st.rots = ir.rotations_used;
    st.contrib = st.rots;
    st.active = st.rots > 0;

    if (st.rots > 0 || !total.is_identity()) {
        DenseMatrix g2 = matmul(mp, up);
        copy_cols(A.g, 0, g2, 0, wa);
        copy_cols(B.g, 0, g2, wa, wb);
        // columns of the updated pair are in factor order: signs follow
        for (std::size_t k = 0; k < wa; ++k) A.signs[k] = j_inner[k];
        for (std::size_t k = 0; k < wb; ++k) B.signs[k] = j_inner[wa + k];
    }
    return st;
}

void worker_loop(std::size_t r, Shared& sh) {
    StrategyState st = initial_state(r, sh.p);
    WorkerOut& wo = sh.out[r];
    Slab a = std::move(wo.a);
    Slab b = std::move(wo.b);

    std::size_t sweep = 1;
    bool converged = false;
    for (;; ++sweep) {
        bool activity = false;
        for (std::size_t step = 0; step < sh.steps; ++step) {
            if (a.blk != st.i_blk || b.blk != st.j_blk)
                throw std::logic_error("engine: slab/state block mismatch");
            StepStats ss;
            try {
                ss = sh.trig ? trig_step(a, b, step, sh) : hyp_step(a, b, step, sh);
            } catch (const non_convergence_error& e) {
                throw non_convergence_error(
                    "worker " + std::to_string(r) + " sweep " +
                        std::to_string(sweep) + " step " + std::to_string(step) +
                        ": " + e.what(),
                    e.residual);
            } catch (const not_positive_definite_error& e) {
                throw not_positive_definite_error(
                    "worker " + std::to_string(r) + " sweep " +
                    std::to_string(sweep) + " step " + std::to_string(step) +
                    ": " + e.what());
            } catch (const rank_deficient_error& e) {
                throw rank_deficient_error(
                    "worker " + std::to_string(r) + " sweep " +
                    std::to_string(sweep) + " step " + std::to_string(step) +
                    ": " + e.what());
            } catch (const std::exception& e) {
                throw std::runtime_error("worker " + std::to_string(r) +
                                         " sweep " + std::to_string(sweep) +
                                         " step " + std::to_string(step) + ": " +
                                         e.what());
            }
            activity = activity || ss.active;
            wo.rotations += ss.rots;
            wo.rescues += ss.rescued ? 1 : 0;
            wo.stage_contrib.push_back(ss.contrib);
            if (sh.trace) {
                TraceRecord tr{r, sweep, step, st.i_blk, st.j_blk, ss.rots};
                std::lock_guard<std::mutex> lk(sh.trace_m);
                sh.trace(tr);
            }

            ExchangePlan plan = exchange_plan(st);
            st = next_pair(st);
            if (sh.p > 1) {
                bool send_a = plan.snd_blk == SendWhich::first;
                sh.inbox[plan.snd_rnk]->put(std::move(send_a ? a : b), sh.failed);
                Slab kept = std::move(send_a ? b : a);
                Slab recv = sh.inbox[r]->take(sh.failed);
                if (kept.blk == st.i_blk && recv.blk == st.j_blk) {
                    a = std::move(kept);
                    b = std::move(recv);
                } else if (recv.blk == st.i_blk && kept.blk == st.j_blk) {
                    a = std::move(recv);
                    b = std::move(kept);
                } else {
                    throw std::logic_error("engine: exchange delivered wrong block");
                }
            }
        }
        bool global_activity = sh.barrier.arrive(activity, sh.failed);
        if (!global_activity) {
            converged = true;
            break;
        }
        if (sweep == sh.max_sweeps) break;
    }
    wo.sweeps = sweep;
    wo.converged = converged;
    wo.a = std::move(a);
    wo.b = std::move(b);
}

void worker_entry(std::size_t r, Shared& sh) {
    try {
        worker_loop(r, sh);
    } catch (const AbortRun&) {
        // another worker failed first
    } catch (...) {
        sh.fail(r, std::current_exception());
    }
}

}  // namespace

SolveReport run(const DenseMatrix& G, const SignVector& J,
                const EngineConfig& cfg) {
    const std::size_t n = G.rows();
    if (G.cols() != n) throw std::invalid_argument("engine: G must be square");
    if (J.size() != n) throw std::invalid_argument("engine: J length != n");
    if (cfg.p == 0) throw std::invalid_argument("engine: p must be >= 1");
    if (cfg.max_sweeps == 0)
        throw std::invalid_argument("engine: max_sweeps must be >= 1");
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (J[k] < J[k + 1])
            throw std::invalid_argument("engine: J must be sorted, +1 first");

    Shared sh;
    sh.part = make_partition(n, cfg.p);  // throws when n < 2p
    sh.J = &J;
    sh.ones = SignVector::ones(n);
    sh.tol = cfg.conv_tol > 0.0 ? cfg.conv_tol
                                : std::sqrt(static_cast<double>(n)) * kEps;
    sh.p = cfg.p;
    sh.n = n;
    sh.steps = steps_per_sweep(cfg.p);
    sh.max_sweeps = cfg.max_sweeps;
    sh.trig = is_trigonometric(cfg.algorithm);
    sh.full_block = is_full_block(cfg.algorithm);
    sh.pivoted = is_pivoted(cfg.algorithm);
    sh.sign_pivoted = is_sign_pivoted(cfg.algorithm);
    sh.barrier.p = cfg.p;
    sh.trace = cfg.trace;
    sh.errors.resize(cfg.p);
    sh.out.resize(cfg.p);
    for (std::size_t r = 0; r < cfg.p; ++r)
        sh.inbox.push_back(std::make_unique<Mailbox>());

    const auto t0 = std::chrono::steady_clock::now();

    // working matrix: block columns of G' for trig (rows of G), of G itself
    // for hyperbolic
    DenseMatrix M = sh.trig ? transpose(G) : G;
    auto make_slab = [&](std::size_t blk) {
        Slab s;
        s.blk = blk;
        std::size_t c0 = sh.part.offsets[blk - 1];
        std::size_t w = sh.part.widths[blk - 1];
        s.g = DenseMatrix(n, w);
        copy_cols(s.g, 0, M, c0, w);
        if (sh.trig) {
            s.u = DenseMatrix(n, w);
            for (std::size_t k = 0; k < w; ++k) s.u(c0 + k, k) = 1.0;
        } else {
            s.signs.resize(w);
            for (std::size_t k = 0; k < w; ++k) s.signs[k] = J[c0 + k];
        }
        return s;
    };
    for (std::size_t r = 0; r < cfg.p; ++r) {
        sh.out[r].a = make_slab(r + 1);
        sh.out[r].b = make_slab(2 * cfg.p - r);
    }

    std::vector<std::thread> pool;
    pool.reserve(cfg.p);
    for (std::size_t r = 0; r < cfg.p; ++r)
        pool.emplace_back(worker_entry, r, std::ref(sh));
    for (auto& t : pool) t.join();

    if (sh.failed.load()) {
        for (std::size_t r = 0; r < cfg.p; ++r)
            if (sh.errors[r]) std::rethrow_exception(sh.errors[r]);
        throw std::runtime_error("engine: worker failed without recording why");
    }

    // reassemble the final working matrix (and U / signs) in global order
    DenseMatrix Mfin(n, n);
    DenseMatrix Ufin;
    std::vector<double> sfin;
    if (sh.trig)
        Ufin = DenseMatrix(n, n);
    else
        sfin.resize(n);
    for (std::size_t r = 0; r < cfg.p; ++r) {
        for (Slab* s : {&sh.out[r].a, &sh.out[r].b}) {
            std::size_t c0 = sh.part.offsets[s->blk - 1];
            std::size_t w = s->g.cols();
            copy_cols(Mfin, c0, s->g, 0, w);
            if (sh.trig) {
                copy_cols(Ufin, c0, s->u, 0, w);
            } else {
                for (std::size_t k = 0; k < w; ++k) sfin[c0 + k] = s->signs[k];
            }
        }
    }

    SolveReport rep;
    rep.variant = cfg.algorithm;
    rep.n = n;
    rep.p = cfg.p;
    rep.sweeps = sh.out[0].sweeps;
    rep.converged = sh.out[0].converged;
    for (std::size_t r = 0; r < cfg.p; ++r) {
        rep.rotations += sh.out[r].rotations;
        rep.rescues += sh.out[r].rescues;
    }
    const std::size_t total_steps = sh.out[0].stage_contrib.size();
    for (std::size_t t = 0; t < total_steps; ++t) {
        std::size_t mx = 0;
        for (std::size_t r = 0; r < cfg.p; ++r)
            mx = std::max(mx, sh.out[r].stage_contrib[t]);
        rep.stages += mx;
    }

    if (!rep.converged) {
        DenseMatrix gram = sh.trig ? gram_with_signs(transpose(Mfin), J)
                                   : gram_with_signs(transpose(Mfin), sh.ones);
        throw non_convergence_error(
            "engine: no convergence after " + std::to_string(rep.sweeps) +
                " sweeps (" + algorithm_name(cfg.algorithm) + ", n=" +
                std::to_string(n) + ")",
            offdiag_frobenius(gram));
    }

    rep.eigenvalues.resize(n);
    if (sh.trig) {
        for (std::size_t k = 0; k < n; ++k) {
            const double* ck = Mfin.col(k);
            double acc = 0.0;
            for (std::size_t m = 0; m < n; ++m) acc += ck[m] * J[m] * ck[m];
            rep.eigenvalues[k] = acc;
        }
        rep.eigenvectors = std::move(Ufin);
    } else {
        rep.eigenvectors = DenseMatrix(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            const double* ck = Mfin.col(k);
            double nrm2 = 0.0;
            for (std::size_t m = 0; m < n; ++m) nrm2 += ck[m] * ck[m];
            if (nrm2 == 0.0)
                throw rank_deficient_error(
                    "engine: zero column in the final factor (singular input?)");
            rep.eigenvalues[k] = sfin[k] * nrm2;
            double inv = 1.0 / std::sqrt(nrm2);
            for (std::size_t m = 0; m < n; ++m)
                rep.eigenvectors(m, k) = ck[m] * inv;
        }
    }
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (std::abs(rep.eigenvalues[k]) < std::abs(rep.eigenvalues[k + 1]))
            ++rep.sortedness_violations;
    rep.time_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

}  // namespace engine
}  // namespace jeig
