#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nplay/outcomes.hpp"

namespace nplay {

// Context universe for bounded law checks and refutation searches. Games are
// deduplicated and kept in canonical id order so witnesses are reproducible.
struct GamePool {
    std::vector<GameId> games;
    int max_birthday = 0;
    bool truncated = false;  // node cap hit while closing the pool

    bool contains(GameId g) const;
};

// All games of birthday <= max_birthday (max 3; 16 games at birthday 3),
// unioned with `seeds`, closed under wrap (once) and pairwise sum, truncated
// by the store's node cap.
GamePool enumerate_games(GameStore& store, int max_birthday, std::span<const GameId> seeds = {});

// Largest k such that a directed path of k undetermined subpositions starts
// at g; 0 when o(g) is nonempty.
int undetermined_depth(GameStore& store, GameId g, PlayerCount n);

// g is not 0 and every option has undetermined depth >= k-1; requires k >= 2.
bool is_strongly_k_undetermined(GameStore& store, GameId g, int k, PlayerCount n);

// Sufficient condition: strongly (N-1)-undetermined games absorb every
// summand into an undetermined sum. Sound, not complete. N > 2 only.
bool absorbing_certify(GameStore& store, GameId g, PlayerCount n);

// First pool game h (in id order) with o(g + h) nonempty, if any.
std::optional<GameId> absorbing_refute(GameStore& store, GameId g, const GamePool& pool,
                                       PlayerCount n);

// The multiple of g the absorbing constructions prescribe: floor(N/2 + 2)
// copies when g is already (N-2)-undetermined, (N-2) * floor(N/2 + 2)
// copies otherwise. g must be undetermined and N > 2.
GameId absorbing_from_undetermined(GameStore& store, GameId g, PlayerCount n);

using EqOracle = std::function<bool(GameId, GameId)>;

// H is revertible to G: every option of g has an eq-equal option of h, and
// every unmatched option of h reaches an eq-equal copy of g in exactly N-1
// further moves. The default oracle is structural identity.
bool revertible(GameStore& store, GameId h, GameId g, PlayerCount n, const EqOracle& eq = {});

enum class Law {
    next_generation,    // N not in o(H)  =>  o(G+H) subset of o(G)
    other_procreation,  // O_m absent from k summands => O_{km} absent from the sum
    mirror,             // N not in o(N copies of G)
    revert_inclusion,   // h revertible to g => o(h+x) subset of o(g+x) on the pool
};

std::string law_name(Law law);

struct LawViolation {
    std::string law;
    std::vector<GameId> tuple;
    std::string expected;
    std::string got;
};

// Scans all applicable tuples from the pool and returns every counterexample
// (expected: none). other_procreation takes its (k, m) here; N > km required.
std::vector<LawViolation> check_law(GameStore& store, Law law, const GamePool& pool, PlayerCount n,
                                    int k = 2, int m = 1);

// First pool x (in id order) with o(g+x) != o(h+x). An empty result means
// "not refuted within this pool", never equality.
std::optional<GameId> equal_refute(GameStore& store, GameId g, GameId h, const GamePool& pool,
                                   PlayerCount n);

// Pool games with three-player outcome exactly {N} whose triple has Previous
// winning; the bounded search for the trebling question. Expected empty.
std::vector<GameId> search_trebling(GameStore& store, const GamePool& pool);

}  // namespace nplay
