#include "jeig/pivot_strategy.hpp"

#include <stdexcept>

namespace jeig {

// The schedule is a round-robin tournament on a circle of M = 2p-1 seats.
// Blocks 1..2p-1 live on residues mod M (residue 0 stands for block M),
// block 2p sits at the hub. In round c the hub pairs with residue c and
// residue c+f pairs with c-f (the "fold" f = 1..p-1). Rounds advance by p
// every step, so 2p-1 consecutive steps visit every round exactly once and
// one sweep covers every unordered block pair exactly once.
//
// Which worker computes which fold is chosen so that the two blocks a worker
// needs next are always its own kept block plus one block from a ring
// neighbor (down-ring on odd sweeps, up-ring on even). The resulting worker
// assignment is periodic with period two sweeps, and at every sweep boundary
// the held pairs form the antidiagonal layout (r+1, 2p-r) again.

namespace {

std::size_t block_of(std::size_t x, std::size_t M) {
    std::size_t m = x % M;
    return m == 0 ? M : m;
}

std::size_t round_at(std::size_t p, std::size_t t) {
    std::size_t M = 2 * p - 1;
    return (1 + t * p) % M;
}

// fold computed by worker w at step t (0-based) of a sweep with the given
// parity; the two families alternate with t's parity
std::size_t fold_at(std::size_t p, std::size_t nsweep, std::size_t t,
                    std::size_t w) {
    if (p == 1) return 0;
    if (p == 2) return w;  // parked: both workers keep their fold all run
    bool odd_sweep = (nsweep % 2) == 1;
    if (odd_sweep) {
        if (t % 2 == 0) return (w + t / 2) % p;
        return (3 * p - 1 - w - (t - 1) / 2) % p;
    }
    if (t % 2 == 0) return (p - w + t / 2) % p;
    return (2 * p + w - 1 - (t - 1) / 2) % p;
}

std::pair<std::size_t, std::size_t> pair_of(std::size_t p, std::size_t fold,
                                            std::size_t c) {
    std::size_t M = 2 * p - 1;
    std::size_t a, b;
    if (fold == 0) {
        a = 2 * p;
        b = block_of(c, M);
    } else {
        a = block_of(c + fold, M);
        b = block_of(c + M - fold, M);
    }
    if (a > b) std::swap(a, b);
    return {a, b};
}

std::size_t step_of(const StrategyState& st) {
    // jp = 2p - r + t by construction
    return st.jp - (2 * st.p - st.r);
}

StrategyState at_position(std::size_t r, std::size_t p, std::size_t nsweep,
                          std::size_t t) {
    StrategyState st;
    st.r = r;
    st.p = p;
    st.nsweep = nsweep;
    std::size_t f = fold_at(p, nsweep, t, r);
    auto pr = pair_of(p, f, round_at(p, t));
    st.ip = f + 1;
    st.jp = 2 * p - r + t;
    st.i_blk = pr.first;
    st.j_blk = pr.second;
    return st;
}

}  // namespace

std::size_t steps_per_sweep(std::size_t p) { return 2 * p - 1; }

StrategyState initial_state(std::size_t r, std::size_t p) {
    if (p == 0 || r >= p) throw std::invalid_argument("initial_state: bad rank");
    return at_position(r, p, 1, 0);
}

StrategyState next_pair(const StrategyState& st) {
    std::size_t t = step_of(st) + 1;
    std::size_t sweep = st.nsweep;
    if (t == steps_per_sweep(st.p)) {
        t = 0;
        sweep += 1;
    }
    return at_position(st.r, st.p, sweep, t);
}

ExchangePlan exchange_plan(const StrategyState& st) {
    ExchangePlan plan;
    std::size_t p = st.p;
    if (p == 1) {
        plan.snd_rnk = st.r;
        plan.rcv_rnk = st.r;
        return plan;
    }
    if (st.nsweep % 2 == 1) {
        plan.snd_rnk = (p + st.r - 1) % p;
        plan.rcv_rnk = (st.r + 1) % p;
    } else {
        plan.snd_rnk = (st.r + 1) % p;
        plan.rcv_rnk = (p + st.r - 1) % p;
    }
    StrategyState nx = next_pair(st);
    // the block absent from the next pair is the one that leaves
    bool keep_first = (st.i_blk == nx.i_blk || st.i_blk == nx.j_blk);
    plan.snd_blk = keep_first ? SendWhich::second : SendWhich::first;
    return plan;
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>>
sweep_schedule(std::size_t p) {
    std::size_t S = steps_per_sweep(p);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> table(
        S, std::vector<std::pair<std::size_t, std::size_t>>(p));
    for (std::size_t r = 0; r < p; ++r) {
        StrategyState st = initial_state(r, p);
        for (std::size_t t = 0; t < S; ++t) {
            table[t][r] = {st.i_blk, st.j_blk};
            st = next_pair(st);
        }
    }
    return table;
}

}  // namespace jeig
