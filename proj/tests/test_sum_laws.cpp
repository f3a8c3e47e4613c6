#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nplay/nim.hpp"
#include "nplay/sum_laws.hpp"
#include "pool_util.hpp"

using namespace nplay;

namespace {

const PlayerCount N3(3);

Outcome o3(const char* s) { return Outcome::parse(s, N3); }

// the sixteen games born by day 3: subsets of the four games born by day 2
std::vector<GameId> birthday3(GameStore& s) {
    std::vector<GameId> day2;
    std::vector<GameId> day1{s.zero(), s.nim_heap(1)};
    for (std::uint32_t m = 0; m < 4; ++m) {
        std::vector<GameId> opts;
        for (int i = 0; i < 2; ++i)
            if ((m >> i) & 1u) opts.push_back(day1[i]);
        day2.push_back(s.intern(std::move(opts)));
    }
    std::sort(day2.begin(), day2.end());
    day2.erase(std::unique(day2.begin(), day2.end()), day2.end());
    std::vector<GameId> out;
    for (std::uint32_t m = 0; m < 16; ++m) {
        std::vector<GameId> opts;
        for (int i = 0; i < 4; ++i)
            if ((m >> i) & 1u) opts.push_back(day2[i]);
        out.push_back(s.intern(std::move(opts)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GameId undet_example(GameStore& s) {  // {*2, {*2}}
    return s.intern({s.nim_heap(2), s.wrap(s.nim_heap(2))});
}

}  // namespace

TEST_CASE("enumerate_games birthdays") {
    GameStore s;
    GamePool p1 = enumerate_games(s, 1);
    CHECK(p1.contains(s.zero()));
    CHECK(p1.contains(s.nim_heap(1)));
    CHECK_FALSE(p1.truncated);
    GameStore t;
    GamePool p3 = enumerate_games(t, 3);
    auto sixteen = birthday3(t);
    CHECK(sixteen.size() == 16);
    for (GameId g : sixteen) CHECK(p3.contains(g));
    // closed under one wrap and one pairwise sum
    CHECK(p3.contains(t.wrap(sixteen.back())));
    CHECK(p3.contains(t.sum(sixteen[3], sixteen[7])));
    // deterministic id order
    CHECK(std::is_sorted(p3.games.begin(), p3.games.end()));
    CHECK_THROWS_AS(enumerate_games(t, 4), error);
}

TEST_CASE("enumerate_games seeds and truncation") {
    GameStore s;
    GameId seed = s.sum(s.nim_heap(4), s.nim_heap(4));
    GamePool p = enumerate_games(s, 2, std::vector<GameId>{seed});
    CHECK(p.contains(seed));
    CHECK(p.contains(s.wrap(seed)));
    GameStore tiny(40);
    GamePool q = enumerate_games(tiny, 3);
    CHECK(q.truncated);
    CHECK(!q.games.empty());
}

TEST_CASE("undetermined depth") {
    GameStore s;
    CHECK(undetermined_depth(s, s.zero(), N3) == 0);
    CHECK(undetermined_depth(s, s.nim_heap(2), N3) == 0);
    // *2 + *3 is undetermined with no undetermined option
    GameId g23 = s.sum(s.nim_heap(2), s.nim_heap(3));
    CHECK(outcome(s, g23, N3).empty());
    for (GameId c : s.options(g23)) CHECK_FALSE(outcome(s, c, N3).empty());
    CHECK(undetermined_depth(s, g23, N3) == 1);
    CHECK(undetermined_depth(s, undet_example(s), N3) == 1);
    // *(N-1) + *(2N-3) is (N-2)-undetermined
    for (int np = 4; np <= 6; ++np) {
        GameId g = s.sum(s.nim_heap(np - 1), s.nim_heap(2 * np - 3));
        CHECK(undetermined_depth(s, g, PlayerCount(np)) >= np - 2);
    }
}

TEST_CASE("depth matches a direct oracle on a pool") {
    GameStore s;
    auto pool = testutil::random_pool(s, 120, 41u);
    for (GameId g : pool) {
        // oracle: recompute by definition over the option graph
        auto rec = [&](auto&& self, GameId x) -> int {
            if (!outcome(s, x, N3).empty()) return 0;
            int best = 0;
            for (GameId c : s.options(x)) best = std::max(best, self(self, c));
            return best + 1;
        };
        CHECK(undetermined_depth(s, g, N3) == rec(rec, g));
    }
}

TEST_CASE("strong undeterminedness") {
    GameStore s;
    CHECK(is_strongly_k_undetermined(s, s.wrap(undet_example(s)), 2, N3));
    CHECK_FALSE(is_strongly_k_undetermined(s, s.zero(), 2, N3));
    CHECK(is_strongly_k_undetermined(s, s.n_copies(s.nim_heap(3), 3), 2, N3));
    CHECK_THROWS_AS(is_strongly_k_undetermined(s, s.zero(), 1, N3), error);
}

TEST_CASE("absorbing certification") {
    GameStore s;
    CHECK(absorbing_certify(s, s.wrap(undet_example(s)), N3));
    CHECK(absorbing_certify(s, s.n_copies(s.nim_heap(3), 3), N3));
    CHECK_FALSE(absorbing_certify(s, s.sum(s.nim_heap(2), s.nim_heap(2)), N3));
    // *2+*2+*n1+*n2 for n >= 2
    for (int n1 = 2; n1 <= 4; ++n1)
        for (int n2 = n1; n2 <= 4; ++n2) {
            GameId g = s.sum(s.sum(s.nim_heap(2), s.nim_heap(2)),
                             s.sum(s.nim_heap(n1), s.nim_heap(n2)));
            CHECK(absorbing_certify(s, g, N3));
        }
    CHECK_THROWS_AS(absorbing_certify(s, s.zero(), PlayerCount(2)), unsupported_players);
}

TEST_CASE("absorbing refutation") {
    GameStore s;
    GamePool pool = enumerate_games(s, 3);
    auto w = absorbing_refute(s, s.nim_heap(2), pool, N3);
    REQUIRE(w.has_value());
    CHECK(*w == s.zero());  // o(*2) = N, already nonempty with the empty context
    auto w2 = absorbing_refute(s, s.n_copies(s.nim_heap(1), 3), pool, N3);
    REQUIRE(w2.has_value());
    CHECK(*w2 == s.zero());  // o(3 ones) = OP
    CHECK_FALSE(absorbing_refute(s, s.wrap(undet_example(s)), pool, N3).has_value());
}

TEST_CASE("certified absorbing games are never refuted") {
    GameStore s;
    GamePool pool = enumerate_games(s, 3);
    std::vector<GameId> certified{
        s.wrap(undet_example(s)),
        s.n_copies(s.nim_heap(3), 3),
        s.n_copies(s.nim_heap(2), 4),
    };
    for (GameId g : certified) {
        REQUIRE(absorbing_certify(s, g, N3));
        CHECK_FALSE(absorbing_refute(s, g, pool, N3).has_value());
    }
}

TEST_CASE("absorbing construction from an undetermined game") {
    GameStore s;
    GameId u = undet_example(s);
    CHECK(absorbing_from_undetermined(s, u, N3) == s.n_copies(u, 3));
    CHECK(absorbing_certify(s, absorbing_from_undetermined(s, u, N3), N3));
    CHECK_THROWS_AS(absorbing_from_undetermined(s, s.zero(), N3), error);
    CHECK_THROWS_AS(absorbing_from_undetermined(s, u, PlayerCount(2)), unsupported_players);
    for (int np = 4; np <= 5; ++np) {
        PlayerCount n(np);
        // depth N-2 example gets the cheap multiple
        GameId deep = s.sum(s.nim_heap(np - 1), s.nim_heap(2 * np - 3));
        GameId a1 = absorbing_from_undetermined(s, deep, n);
        CHECK(a1 == s.n_copies(deep, np / 2 + 2));
        CHECK(absorbing_certify(s, a1, n));
        // depth-1 example pays the (N-2) factor
        GameId shallow = s.sum(s.nim_heap(np - 1), s.nim_heap(np));
        CHECK(undetermined_depth(s, shallow, n) == 1);
        GameId a2 = absorbing_from_undetermined(s, shallow, n);
        CHECK(a2 == s.n_copies(shallow, (np / 2 + 2) * (np - 2)));
        CHECK(absorbing_certify(s, a2, n));
    }
}

TEST_CASE("revertibility") {
    GameStore s;
    GameId g = s.intern({s.nim_heap(2), s.zero()});
    CHECK(revertible(s, g, g, N3));
    CHECK(revertible(s, s.n_copies(s.nim_heap(1), 3), s.zero(), N3));
    CHECK_FALSE(revertible(s, s.nim_heap(1), s.zero(), N3));
    CHECK_FALSE(revertible(s, s.zero(), s.nim_heap(1), N3));
    // revertible games satisfy the inclusion law on a pool
    GamePool pool = enumerate_games(s, 2);
    CHECK(check_law(s, Law::revert_inclusion, pool, N3).empty());
}

TEST_CASE("revert inclusion across the whole birthday-3 closure") {
    GameStore s;
    GamePool pool = enumerate_games(s, 3);
    // the (3 ones, 0) pair is among the scanned revertible pairs, and the
    // separating context wrap({0, two ones}) is in the pool
    GameId three_ones = s.n_copies(s.nim_heap(1), 3);
    REQUIRE(pool.contains(three_ones));
    REQUIRE(pool.contains(s.wrap(s.intern({s.zero(), s.sum(s.nim_heap(1), s.nim_heap(1))}))));
    REQUIRE(revertible(s, three_ones, s.zero(), N3));
    CHECK(check_law(s, Law::revert_inclusion, pool, N3).empty());
}

TEST_CASE("revert inclusion holds while outcomes differ") {
    GameStore s;
    GameId three_ones = s.n_copies(s.nim_heap(1), 3);
    REQUIRE(revertible(s, three_ones, s.zero(), N3));
    GameId x = s.wrap(s.intern({s.zero(), s.sum(s.nim_heap(1), s.nim_heap(1))}));
    CHECK(outcome(s, s.sum(three_ones, x), N3).subset_of(outcome(s, x, N3)));
    CHECK(outcome(s, s.sum(three_ones, x), N3) != outcome(s, x, N3));
}

TEST_CASE("laws hold over the birthday-3 closure") {
    GameStore s;
    GamePool pool = enumerate_games(s, 3);
    CHECK(check_law(s, Law::next_generation, pool, N3).empty());
    CHECK(check_law(s, Law::other_procreation, pool, N3, 2, 1).empty());
    CHECK(check_law(s, Law::mirror, pool, N3).empty());
    // k*m = 3 demands more than three players
    CHECK_THROWS_AS(check_law(s, Law::other_procreation, pool, N3, 3, 1), error);
}

TEST_CASE("other procreation with three summands needs four players") {
    GameStore s;
    GamePool pool = enumerate_games(s, 2);
    CHECK(check_law(s, Law::other_procreation, pool, PlayerCount(4), 3, 1).empty());
    CHECK(check_law(s, Law::other_procreation, pool, PlayerCount(4), 2, 1).empty());
}

TEST_CASE("sum of undetermined games is undetermined over pools") {
    GameStore s;
    GamePool pool = enumerate_games(s, 3);
    std::vector<GameId> undet;
    for (GameId g : pool.games)
        if (outcome(s, g, N3).empty()) undet.push_back(g);
    REQUIRE(!undet.empty());
    for (GameId g : undet)
        for (GameId h : undet) {
            CHECK(outcome(s, s.sum(g, h), N3).empty());
            int dg = undetermined_depth(s, g, N3), dh = undetermined_depth(s, h, N3);
            CHECK(undetermined_depth(s, s.sum(g, h), N3) >= dg + dh);
        }
}

TEST_CASE("no previous strategy next to an undetermined summand") {
    GameStore s;
    GamePool pool = enumerate_games(s, 3);
    std::vector<GameId> undet;
    for (GameId g : pool.games)
        if (outcome(s, g, N3).empty()) undet.push_back(g);
    for (GameId g : undet)
        for (GameId h : pool.games) CHECK_FALSE(outcome(s, s.sum(g, h), N3).contains_previous());
}

TEST_CASE("deep undeterminedness blocks Previous for any player count") {
    GameStore s;
    for (int np = 4; np <= 5; ++np) {
        PlayerCount n(np);
        GameId g = s.sum(s.nim_heap(np - 1), s.nim_heap(2 * np - 3));
        REQUIRE(undetermined_depth(s, g, n) >= np - 2);
        GamePool pool = enumerate_games(s, 2);
        for (GameId h : pool.games)
            CHECK_FALSE(outcome(s, s.sum(g, h), n).contains_previous());
    }
}

TEST_CASE("P-only summands collapse to undetermined") {
    GameStore s;
    GamePool pool = enumerate_games(s, 3);
    std::vector<GameId> ps;
    for (GameId g : pool.games) {
        auto o = outcome(s, g, N3);
        if ((o.mask() & ~0b100u) == 0) ps.push_back(g);  // outcome within {P}
    }
    REQUIRE(!ps.empty());
    for (GameId g : ps)
        for (GameId h : ps) CHECK(outcome(s, s.sum(g, h), N3).empty());
}

TEST_CASE("equality refutation finds the constructed witnesses") {
    GameStore s;
    GameId three_ones = s.n_copies(s.nim_heap(1), 3);
    GameId x = s.wrap(s.intern({s.zero(), s.sum(s.nim_heap(1), s.nim_heap(1))}));
    // the paper's separating context between 3 ones and 0, with its outcomes
    CHECK(outcome(s, x, N3) == o3("NO"));
    CHECK(outcome(s, s.sum(three_ones, x), N3) == o3("N"));
    GamePool pool = enumerate_games(s, 3);
    auto w = equal_refute(s, three_ones, s.zero(), pool, N3);
    REQUIRE(w.has_value());
    CHECK(outcome(s, s.sum(three_ones, *w), N3) != outcome(s, *w, N3));
    // reflexivity is never refuted
    CHECK_FALSE(equal_refute(s, three_ones, three_ones, pool, N3).has_value());
    // four players: {(N-1) ones, 0} wrapped separates N ones from 0
    PlayerCount n4(4);
    GameId seed = s.intern({s.n_copies(s.nim_heap(1), 3), s.zero()});
    GameId w4 = s.wrap(seed);
    GameId four_ones = s.n_copies(s.nim_heap(1), 4);
    CHECK(outcome(s, s.sum(four_ones, w4), n4) != outcome(s, w4, n4));
    GamePool pool4 = enumerate_games(s, 3, std::vector<GameId>{seed});
    auto wit4 = equal_refute(s, four_ones, s.zero(), pool4, n4);
    REQUIRE(wit4.has_value());
}

TEST_CASE("trebling search comes back empty at desk scale") {
    GameStore s;
    GamePool pool = enumerate_games(s, 3);
    CHECK(search_trebling(s, pool).empty());
    // *2 is filtered by its triple's outcome (no P in it), * by its own outcome
    CHECK(outcome(s, s.nim_heap(2), N3) == o3("N"));
    CHECK_FALSE(outcome(s, s.n_copies(s.nim_heap(2), 3), N3).contains_previous());
    CHECK(outcome(s, s.nim_heap(1), N3) == o3("PN"));
}
