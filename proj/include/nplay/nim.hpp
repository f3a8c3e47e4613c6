#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nplay/outcomes.hpp"

namespace nplay {

// Sorted multiset of positive heap sizes; the empty multiset is the game 0.
struct NimPosition {
    std::vector<int> heaps;

    static NimPosition of(std::vector<int> hs);
    NimPosition plus(const NimPosition& other) const;
};

// Heap counts by the only sizes that matter with three players.
struct NimProfile {
    int ones = 0;
    int twos = 0;
    int bigs = 0;  // heaps of size >= 3
};

NimProfile profile(const NimPosition& p);

// Brute force through the game engine; the oracle the closed forms are
// checked against.
Outcome nim_outcome_engine(GameStore& store, const NimPosition& p, PlayerCount n);

// Three-player closed form: undetermined unless the position is
// k ones (+ one heap of size >= 2) (+ one more heap when the first is a 2),
// in which case the pattern is keyed by k mod 3.
Outcome nim_outcome_closed3(const NimPosition& p);

// o(*0) = complement{N}; o(*i) = complement{O_1..O_min(i,N-1)} for i >= 1.
Outcome one_heap_outcome(int i, PlayerCount n);

// The five-case two-heap classification; requires N > 2 and i <= j.
Outcome two_heap_outcome(int i, int j, PlayerCount n);

// Certifies that the outcome sequence o(k ones + g) has period N: checks the
// periodicity hypothesis on every subposition (o(H) = o(N ones + H)) and the
// sequence itself up to `prefix` (which must be >= 2N). A true result means
// "verified to the horizon", with the hypothesis check extending it to all k.
bool check_n_periodicity(GameStore& store, GameId g, PlayerCount n, int prefix);

struct StabilityResult {
    bool ok = false;
    std::optional<GameId> offending;  // subposition failing the hypothesis
};

// Checks o(H + *(N+1)) = o(H + *N) for every subposition H of g, then
// verifies o(g + *m) = o(g + *N) for N <= m <= horizon (horizon >= N+2).
StabilityResult check_n_stability(GameStore& store, GameId g, PlayerCount n, int horizon);

// Element of the three-player Nim quotient: either the absorbing element or
// a normal form a^x b^y c^z with x < 3, y + z <= 2, z <= 1.
struct QuotientElement {
    bool absorbing = false;
    int x = 0, y = 0, z = 0;

    static QuotientElement abs() { return {true, 0, 0, 0}; }
    std::string name() const;  // "1", "a^2b", "c^2", ...
    NimPosition representative() const;
    friend bool operator==(const QuotientElement&, const QuotientElement&) = default;
};

QuotientElement phi(const NimPosition& p);
QuotientElement quotient_mult(const QuotientElement& a, const QuotientElement& b);
Outcome pi(const QuotientElement& q);

struct NimQuotient {
    std::array<QuotientElement, 16> elements;  // fixed presentation order
    std::array<std::array<int, 16>, 16> mult;  // indices into elements
    std::array<Outcome, 16> outcomes;          // the Pi row

    int index_of(const QuotientElement& e) const;
};

// Builds the order-16 quotient and re-derives its consistency from the
// closed-form outcomes instead of trusting the multiplication rules: every
// product is compared against its normal form across the capped context
// space (ones <= 5, twos <= 4, bigs <= 3), the 16 classes are separated by
// explicit contexts, and the build throws on any failure.
NimQuotient quotient_build();

}  // namespace nplay
