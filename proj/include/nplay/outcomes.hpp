#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "nplay/game_store.hpp"

namespace nplay {

// The set of seat-relative players holding winning strategies. Bit i is
// O_i, with O_0 = Next and O_{N-1} = Previous. Any outcome computed from a
// game is a proper subset of the N players.
class Outcome {
public:
    Outcome() = default;  // empty outcome at the minimum player count
    Outcome(std::uint32_t mask, PlayerCount n) : mask_(mask), players_(n.value()) {
        if (mask >> players_) throw error("outcome mask wider than player count");
    }

    std::uint32_t mask() const { return mask_; }
    int players() const { return players_; }
    bool empty() const { return mask_ == 0; }
    bool contains(int seat) const { return (mask_ >> seat) & 1u; }  // seat 0 = Next
    bool contains_next() const { return contains(0); }
    bool contains_previous() const { return contains(players_ - 1); }
    bool subset_of(const Outcome& o) const { return (mask_ & ~o.mask_) == 0; }

    // Token string in seat order, e.g. "NP" for {Next, Previous}; "-" for the
    // empty set. At N = 3 the single Other prints as "O"; otherwise "Oi".
    std::string str() const;

    // Accepts the canonical form; at N = 3 the aliases NOP/NO/OP/PN/N/O/P
    // (and any token order) are accepted too.
    static Outcome parse(std::string_view text, PlayerCount n);

    friend bool operator==(const Outcome&, const Outcome&) = default;

private:
    std::uint32_t mask_ = 0;
    int players_ = 2;
};

// The N-player normal-play outcome: Next wins iff some option's outcome
// contains Previous; O_i (i >= 1) wins iff every option's outcome contains
// O_{i-1}. Memoized per (game, N); evaluated as a post-order DAG traversal.
Outcome outcome(GameStore& store, GameId g, PlayerCount n);

// True iff the player moving i-th (1-based) in g has a winning strategy.
bool wins_moving_ith(GameStore& store, GameId g, int i, PlayerCount n);

// A game whose outcome is exactly `target` (a proper subset). For targets
// containing Next: options (i-1)*heap-of-ones for each losing O_i. Targets
// without Next are cycled into that case via wraps. The empty target uses
// {H, {H}} with H = {0, *, ..., (N-2) ones}; it needs N > 2.
GameId outcome_witness(GameStore& store, const Outcome& target);

}  // namespace nplay
