#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nplay/outcomes.hpp"

namespace nplay {

// Handle into a PartizanStore.
class PGameId {
public:
    constexpr PGameId() = default;
    constexpr explicit PGameId(std::uint32_t v) : v_(v) {}
    constexpr std::uint32_t value() const { return v_; }
    friend constexpr auto operator<=>(PGameId, PGameId) = default;

private:
    std::uint32_t v_ = 0;
};

// Hash-consed store of partizan games for a fixed player count. A node is an
// ordered N-tuple of option sets; slot 0 belongs to Left, slot N-1 to Right,
// slot i to Center_i. Equal ids mean isomorphic labeled game trees.
// Restrictions are interned into the impartial store handed in at
// construction. Single-owner, like GameStore.
class PartizanStore {
public:
    PartizanStore(GameStore& impartial, PlayerCount n, std::size_t max_nodes = 1'000'000);

    GameStore& impartial() { return impartial_; }
    PlayerCount players() const { return players_; }
    int seats() const { return players_.value(); }

    PGameId zero() const { return PGameId(0); }
    std::size_t size() const { return nodes_.size(); }

    // Canonicalizes each slot (sorts, dedups) and interns. `slots` must have
    // exactly N entries.
    PGameId intern(std::vector<std::vector<PGameId>> slots);

    std::span<const PGameId> slot(PGameId g, int seat) const;

    PGameId sum(PGameId g, PGameId h);
    PGameId n_copies(PGameId g, int k);

    // First conjugate: every player's options become the previous player's,
    // conjugated. The N-th conjugate is the identity.
    PGameId conjugate(PGameId g);
    PGameId kth_conjugate(PGameId g, int k);

    // The sum of the first N-1 conjugates.
    PGameId conj_sum(PGameId g);

    // integer(k, p): p may move k times and nobody else may move; options
    // are the smaller integers. ones(k, p) is the sum of k copies of
    // one(p); the two are equal in every context but not isomorphic for
    // k >= 2.
    PGameId integer(int k, int seat);
    PGameId one(int seat) { return integer(1, seat); }
    PGameId ones(int k, int seat) { return n_copies(one(seat), k); }

    // The impartial game embedded as a partizan one (same options everywhere).
    PGameId embed(GameId g);
    // Inverse of embed, when g is such an embedding.
    std::optional<GameId> embedded(PGameId g);

    // The impartial game obtained when `first` moves first and play cycles.
    GameId restriction(PGameId g, int first);

    int tree_height(PGameId g);

    void check(PGameId g) const {
        if (g.value() >= nodes_.size()) throw invalid_handle("partizan id does not belong to this store");
    }

private:
    GameStore& impartial_;
    PlayerCount players_;
    std::size_t max_nodes_;
    std::vector<std::vector<std::vector<PGameId>>> nodes_;
    std::unordered_multimap<std::uint64_t, std::uint32_t> intern_;
    std::unordered_map<std::uint64_t, std::uint32_t> sum_memo_;
    std::vector<std::int64_t> conj_memo_;
    std::unordered_map<std::uint64_t, std::uint32_t> rest_memo_;
    std::unordered_map<std::uint32_t, std::uint32_t> embed_memo_;
    std::vector<std::int64_t> embedded_memo_;  // -2 unknown, -1 not an embed
    std::vector<std::int32_t> height_;
};

// Outcome tuple indexed by the first mover's seat.
struct PartizanOutcome {
    std::vector<Outcome> by_first;
    friend bool operator==(const PartizanOutcome&, const PartizanOutcome&) = default;
};

PartizanOutcome p_outcome(PartizanStore& store, PGameId g);

// Does `seat` have a winning strategy in g moving `order`-th (1-based)?
bool p_wins(PartizanStore& store, PGameId g, int seat, int order);

// Closed form for sums of one-move integers: with Center_first moving first
// there is a single line of play, and the j-th mover runs out first, where j
// picks out the first minimal coefficient at or after `first` cyclically.
Outcome integer_sum_outcome(std::span<const int> coeffs, int first, PlayerCount n);

// Exact rules for comparisons with 0. zero_leq decides 0 <=_seat g and
// requires N > 2; leq_zero decides g <=_seat 0 for any N.
bool zero_leq(PartizanStore& store, PGameId g, int seat);
bool leq_zero(PartizanStore& store, PGameId g, int seat);

// Sound, incomplete test for g <=_seat h: the recursive inequality test with
// obligations settled by structural identity, then the exact zero rules,
// then self-application. true proves the inequality; false concludes nothing.
bool leq_sufficient(PartizanStore& store, PGameId g, PGameId h, int seat);

// The constructed witness contexts the refutation proofs use, sized for the
// pair (g, h): conjugate sums, m copies of (one(seat))-conjugate-sums, the
// two zero-rule refutation games, and the one-option integer-sum games.
std::vector<PGameId> witness_family(PartizanStore& store, PGameId g, PGameId h, int seat);

// First (x, order) with `seat` winning g+x moving order-th but not h+x.
std::optional<std::pair<PGameId, int>> leq_refute(PartizanStore& store, PGameId g, PGameId h,
                                                  int seat, std::span<const PGameId> pool);

struct CompareVerdict {
    enum class Kind { proven, refuted, unknown } kind;
    std::string rule;            // proven: which rule fired
    PGameId witness{};           // refuted: separating context
    int order = 0;               // refuted: move order for `seat`
    std::string budget;          // unknown: what was exhausted

    bool proven() const { return kind == Kind::proven; }
    bool refuted() const { return kind == Kind::refuted; }
    std::string str() const;
};

// Semidecision of g <=_seat h: identity and zero rules first, then the
// sufficient test, then refutation over the witness family and the pool.
CompareVerdict compare(PartizanStore& store, PGameId g, PGameId h, int seat,
                       std::span<const PGameId> pool = {});

// Removes slot-seat option `drop` from g, allowed only when drop <= keep for
// that seat is Proven. The result is =_seat g; full outcomes may change.
PGameId delete_dominated(PartizanStore& store, PGameId g, int seat, int keep_index, int drop_index,
                         std::span<const PGameId> pool = {});

// Bypasses the reversible option chain[0] (an option of g for `seat`):
// chain[t] must be an option of chain[t-1] for seat+t, and the final game of
// the N-long chain must satisfy chain[N-1] <=_seat g (Proven). The option is
// replaced by that follower's seat options. The result is =_seat g only.
PGameId bypass_reversible(PartizanStore& store, PGameId g, int seat, std::span<const PGameId> chain,
                          std::span<const PGameId> pool = {});

// A game realizing any N-tuple of proper impartial outcomes: slot i holds the
// (N-1)-fold wrap of an impartial witness for component i. N > 2.
PGameId p_outcome_witness(PartizanStore& store, const PartizanOutcome& target);

// Small-slot enumeration (per-slot options drawn from {0, one(slot), *}),
// plus integers, conjugate sums and one-option integer games; sorted by id.
std::vector<PGameId> default_partizan_pool(PartizanStore& store);

// First pool x whose full outcome tuple separates g from h.
std::optional<PGameId> p_equal_refute(PartizanStore& store, PGameId g, PGameId h,
                                      std::span<const PGameId> pool);

}  // namespace nplay
