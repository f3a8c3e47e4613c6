#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "nplay/errors.hpp"

namespace nplay {

// Handle into a GameStore. Two ids of the same store are equal exactly when
// the option trees are isomorphic (options as sets, recursively deduplicated).
class GameId {
public:
    constexpr GameId() = default;
    constexpr explicit GameId(std::uint32_t v) : v_(v) {}
    constexpr std::uint32_t value() const { return v_; }
    friend constexpr auto operator<=>(GameId, GameId) = default;

private:
    std::uint32_t v_ = 0;
};

class PlayerCount {
public:
    explicit PlayerCount(int n) : n_(n) {
        if (n < 2 || n > kMax) throw error("player count must be in [2, 30]");
    }
    int value() const { return n_; }
    friend bool operator==(PlayerCount, PlayerCount) = default;

    static constexpr int kMax = 30;  // outcome masks live in uint32_t

private:
    int n_;
};

// Hash-consed store of impartial game DAGs. Node 0 is the empty game and is
// created at construction. Child lists are strictly increasing id sequences.
// Single-owner: all mutation (interning, memo fill) happens under one logical
// owner; share only frozen stores across readers.
class GameStore {
public:
    explicit GameStore(std::size_t max_nodes = 1'000'000);

    GameId zero() const { return GameId(0); }
    std::size_t size() const { return begin_.size() - 1; }
    std::size_t max_nodes() const { return max_nodes_; }

    // Canonicalizes (sorts, dedups) and interns an option set.
    GameId intern(std::vector<GameId> options);

    GameId nim_heap(int n);
    GameId wrap(GameId g) { return intern({g}); }
    GameId sum(GameId g, GameId h);
    GameId n_copies(GameId g, int k);

    std::span<const GameId> options(GameId g) const {
        check(g);
        return {child_data_.data() + begin_[g.value()],
                begin_[g.value() + 1] - begin_[g.value()]};
    }

    // Reflexive-transitive closure over options, sorted by id.
    std::vector<GameId> subpositions(GameId g) const;

    // Size n if g is the nim-heap *n, otherwise -1. Structural, creation-path
    // independent, memoized.
    int heap_size(GameId g);

    // Game-tree height (birthday). Memoized.
    int height(GameId g);

    void check(GameId g) const {
        if (g.value() >= size()) throw invalid_handle("game id does not belong to this store");
    }

    // Memo slots for the outcome computation, one lazily grown row per player
    // count; managed by outcome() in outcomes.hpp. UINT32_MAX marks unset.
    std::vector<std::uint32_t>& outcome_slots(int players);

private:
    std::size_t max_nodes_;
    std::vector<GameId> child_data_;    // all child lists, concatenated
    std::vector<std::uint32_t> begin_;  // node i's children at [begin_[i], begin_[i+1])
    std::unordered_multimap<std::uint64_t, std::uint32_t> intern_;
    std::unordered_map<std::uint64_t, std::uint32_t> sum_memo_;
    std::vector<GameId> heap_ids_;
    std::vector<std::int32_t> heap_size_;  // -2 unknown, -1 not a heap
    std::vector<std::int32_t> height_;     // -1 unknown
    std::unordered_map<int, std::vector<std::uint32_t>> outcome_memo_;

    std::uint32_t intern_sorted(const std::vector<GameId>& kids);
};

}  // namespace nplay
