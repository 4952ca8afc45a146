#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace jeig {

// Per-worker cursor through the block pivot schedule. Blocks are 1-based
// (1..2p); i_blk < j_blk always. ip carries the current fold index (1-based),
// jp carries the step-in-sweep offset so the pair of (ip, jp) fully encodes
// the cursor position.
struct StrategyState {
    std::size_t r = 0;   // worker rank, 0-based
    std::size_t p = 1;   // worker count
    std::size_t ip = 1;
    std::size_t jp = 2;
    std::size_t i_blk = 1;
    std::size_t j_blk = 2;
    std::size_t nsweep = 1;  // 1-based sweep counter
};

StrategyState initial_state(std::size_t r, std::size_t p);

// Advance one step; wraps into the next sweep after 2p-1 steps.
StrategyState next_pair(const StrategyState& st);

enum class SendWhich { first, second };

// What to do with the held blocks after finishing the current step: one of
// the two block columns (snd_blk) goes to snd_rnk, one arrives from rcv_rnk.
// Odd sweeps send down the ring, even sweeps send up; the transition out of
// a sweep's last step still uses that sweep's direction.
struct ExchangePlan {
    SendWhich snd_blk = SendWhich::first;
    std::size_t snd_rnk = 0;
    std::size_t rcv_rnk = 0;
};

// p = 1 degenerates to a self-plan (snd_rnk = rcv_rnk = r, nothing moves).
ExchangePlan exchange_plan(const StrategyState& st);

std::size_t steps_per_sweep(std::size_t p);

// One sweep materialized: result[step][rank] = (i_blk, j_blk).
std::vector<std::vector<std::pair<std::size_t, std::size_t>>>
sweep_schedule(std::size_t p);

}  // namespace jeig
