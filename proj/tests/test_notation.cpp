#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nplay/notation.hpp"
#include "nplay/tables.hpp"
#include "pool_util.hpp"

using namespace nplay;

#ifndef NPLAY_TEST_DATA_DIR
#define NPLAY_TEST_DATA_DIR "data"
#endif

namespace {

const PlayerCount N3(3);

}  // namespace

TEST_CASE("compact notation basics") {
    GameStore s;
    CHECK(parse_compact(s, "0") == s.zero());
    CHECK(parse_compact(s, "*") == s.nim_heap(1));
    CHECK(parse_compact(s, "*2") == s.nim_heap(2));
    CHECK(parse_compact(s, "*9") == s.nim_heap(9));
    // multi-digit runs are several elems
    CHECK(parse_compact(s, "*21") == s.intern({s.nim_heap(2), s.nim_heap(1)}));
    CHECK(parse_compact(s, "*21") != s.nim_heap(21));
    CHECK(parse_compact(s, "*210") == s.intern({s.nim_heap(2), s.nim_heap(1), s.zero()}));
    // ...while a subscripted digit is a sum
    CHECK(parse_compact(s, "*2_1") == s.sum(s.nim_heap(2), s.nim_heap(1)));
    CHECK(parse_compact(s, "*2_1") != parse_compact(s, "*21"));
}

TEST_CASE("compact subscripts") {
    GameStore s;
    GameId two = s.nim_heap(2);
    CHECK(parse_compact(s, "*2_#") == s.wrap(two));
    CHECK(parse_compact(s, "*2_#_#") == s.wrap(s.wrap(two)));
    CHECK(parse_compact(s, "*2_{##}") == s.wrap(s.wrap(two)));
    // a second subchar needs its own '_' or a braced group
    CHECK_THROWS_AS(parse_compact(s, "*2_##"), parse_error);
    CHECK(parse_compact(s, "*2_2") == s.sum(two, two));
    // subscripts apply left to right
    CHECK(parse_compact(s, "*2_{##2}") == s.sum(s.wrap(s.wrap(two)), two));
    CHECK(parse_compact(s, "*2_{2##}") == s.wrap(s.wrap(s.sum(two, two))));
    // {{*2}, *2} two ways
    GameId expected = s.intern({s.wrap(two), two});
    CHECK(parse_compact(s, "*2_#2") == expected);
    CHECK(parse_compact(s, "*2_{#}2") == expected);
    // *2_#2 is an elem list, *2_{#2} is one elem
    CHECK(parse_compact(s, "*2_{#2}") == s.sum(s.wrap(two), two));
}

TEST_CASE("compact parentheses") {
    GameStore s;
    GameId two = s.nim_heap(2), star = s.nim_heap(1);
    // single elem groups, several elems make a game
    CHECK(parse_compact(s, "*(2)") == two);
    CHECK(parse_compact(s, "*(21)") == s.intern({two, star}));
    CHECK(parse_compact(s, "*(2_10)_#") == s.wrap(s.intern({s.sum(two, star), s.zero()})));
    CHECK(parse_compact(s, "*2_#320") ==
          s.intern({s.wrap(two), s.nim_heap(3), two, s.zero()}));
    CHECK(parse_compact(s, "*(1_#1)20") ==
          s.intern({s.intern({s.wrap(star), star}), two, s.zero()}));
}

TEST_CASE("compact errors carry positions") {
    GameStore s;
    CHECK_THROWS_AS(parse_compact(s, ""), parse_error);
    CHECK_THROWS_AS(parse_compact(s, "x"), parse_error);
    CHECK_THROWS_AS(parse_compact(s, "*2_"), parse_error);
    CHECK_THROWS_AS(parse_compact(s, "*2_{"), parse_error);
    CHECK_THROWS_AS(parse_compact(s, "*2_{}"), parse_error);
    CHECK_THROWS_AS(parse_compact(s, "*("), parse_error);
    CHECK_THROWS_AS(parse_compact(s, "*()"), parse_error);
    CHECK_THROWS_AS(parse_compact(s, "*2_x"), parse_error);
    CHECK_THROWS_AS(parse_compact(s, "*2 "), parse_error);
    CHECK_THROWS_AS(parse_compact(s, "00"), parse_error);
    try {
        parse_compact(s, "*2_x");
    } catch (const parse_error& e) {
        CHECK(e.pos == 3);
    }
}

TEST_CASE("verbose expressions, impartial") {
    GameStore s;
    CHECK(parse_expr("0", s, nullptr).impartial() == s.zero());
    CHECK(parse_expr("{0}", s, nullptr).impartial() == s.nim_heap(1));
    CHECK(parse_expr("*17", s, nullptr).impartial() == s.nim_heap(17));
    CHECK(parse_expr("{}", s, nullptr).impartial() == s.zero());
    CHECK(parse_expr("sum(*2,*3)", s, nullptr).impartial() ==
          s.sum(s.nim_heap(2), s.nim_heap(3)));
    CHECK(parse_expr("copies(3,*)", s, nullptr).impartial() ==
          s.n_copies(s.nim_heap(1), 3));
    CHECK(parse_expr("wrap(*2)", s, nullptr).impartial() == s.wrap(s.nim_heap(2)));
    CHECK(parse_expr("{ *2 , {0, *} }", s, nullptr).impartial() ==
          s.intern({s.nim_heap(2), s.intern({s.zero(), s.nim_heap(1)})}));
    CHECK_THROWS_AS(parse_expr("{0", s, nullptr), parse_error);
    CHECK_THROWS_AS(parse_expr("frob(1)", s, nullptr), parse_error);
    CHECK_THROWS_AS(parse_expr("one(L)", s, nullptr), error);  // needs a partizan store
}

TEST_CASE("verbose expressions, partizan") {
    GameStore imp;
    PartizanStore s(imp, N3);
    auto v = parse_expr("{0,*| |0}", imp, &s);
    REQUIRE(v.is_partizan());
    PGameId g = v.partizan();
    CHECK(s.slot(g, 0).size() == 2);
    CHECK(s.slot(g, 1).empty());
    CHECK(s.slot(g, 2).size() == 1);
    CHECK(s.slot(g, 2)[0] == s.zero());
    CHECK(parse_expr("one(L)", imp, &s).partizan() == s.one(0));
    CHECK(parse_expr("one(C1)", imp, &s).partizan() == s.one(1));
    CHECK(parse_expr("one(R)", imp, &s).partizan() == s.one(2));
    CHECK(parse_expr("int(3,L)", imp, &s).partizan() == s.integer(3, 0));
    CHECK(parse_expr("conj(one(L))", imp, &s).partizan() == s.one(1));
    CHECK(parse_expr("negsum(one(L))", imp, &s).partizan() == s.conj_sum(s.one(0)));
    CHECK(parse_expr("embed(*2)", imp, &s).partizan() == s.embed(imp.nim_heap(2)));
    CHECK(parse_expr("sum(one(L),*)", imp, &s).partizan() ==
          s.sum(s.one(0), s.embed(imp.nim_heap(1))));
    CHECK(parse_expr("copies(2,one(L))", imp, &s).partizan() == s.ones(2, 0));
    CHECK(parse_expr("{int(2,C1)||}", imp, &s).partizan() ==
          s.intern({{s.integer(2, 1)}, {}, {}}));
    // bar count must match the player count
    CHECK_THROWS_AS(parse_expr("{0|0}", imp, &s), parse_error);
    CHECK_THROWS_AS(parse_expr("{0|0|0|0}", imp, &s), parse_error);
    CHECK_THROWS_AS(parse_expr("one(C2)", imp, &s), parse_error);
    CHECK_THROWS_AS(parse_expr("wrap(one(L))", imp, &s), parse_error);
}

TEST_CASE("printer forms") {
    GameStore s;
    CHECK(print_game(s, s.zero()) == "0");
    CHECK(print_game(s, s.nim_heap(1)) == "*");
    CHECK(print_game(s, s.nim_heap(3)) == "*3");
    GameId g = s.intern({s.wrap(s.nim_heap(2)), s.nim_heap(2)});
    // canonical child order: ids decide, and both orders parse back equal
    std::string text = print_game(s, g);
    CHECK((text == "{{*2},*2}" || text == "{*2,{*2}}"));
    CHECK(parse_expr(text, s, nullptr).impartial() == g);
    // heaps built structurally still print as heaps
    GameId manual = s.intern({s.zero(), s.intern({s.zero()})});
    CHECK(print_game(s, manual) == "*2");
}

TEST_CASE("partizan printer round trip") {
    GameStore imp;
    PartizanStore s(imp, N3);
    std::vector<PGameId> sample{
        s.zero(),
        s.one(1),
        s.integer(2, 0),
        s.embed(imp.nim_heap(2)),
        s.sum(s.one(0), s.embed(imp.nim_heap(1))),
        s.intern({{s.zero(), s.one(2)}, {}, {s.embed(imp.nim_heap(1))}}),
    };
    for (PGameId g : sample) {
        std::string text = print_game(s, g);
        auto back = parse_expr(text, imp, &s);
        PGameId back_id = back.is_partizan() ? back.partizan() : s.embed(back.impartial());
        CHECK(back_id == g);
    }
}

TEST_CASE("round trip on random pool games") {
    GameStore s;
    // printing unfolds the DAG into a tree, so keep heights printable
    auto pool = testutil::random_pool(s, 500, 77u, 8);
    for (GameId g : pool) CHECK(parse_expr(print_game(s, g), s, nullptr).impartial() == g);
}

TEST_CASE("fixture digests and appendix strings parse") {
    GameStore s;
    Tables t = Tables::load(NPLAY_TEST_DATA_DIR "/tables");
    CHECK(t.t8.size() == 85);
    CHECK(t.t6.size() == 23);
    CHECK(t.t7.size() == 20);
    auto games = appendix_games(s, t);
    CHECK(games.size() == 48);
    // the undetermined double from the examples: {{*2},*2}
    GameId star2 = s.nim_heap(2);
    CHECK(std::binary_search(games.begin(), games.end(), s.intern({s.wrap(star2), star2})));
    // appendix notation spot checks against their verbose equivalents
    CHECK(parse_compact(s, "*2_{##2}") ==
          parse_expr("sum(wrap(wrap(*2)),*2)", s, nullptr).impartial());
    CHECK(parse_compact(s, "*2_{2##}") ==
          parse_expr("wrap(wrap(sum(*2,*2)))", s, nullptr).impartial());
}

TEST_CASE("tampered fixtures are rejected by the digest check") {
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / "nplay_tamper_test";
    fs::remove_all(tmp);
    fs::copy(NPLAY_TEST_DATA_DIR "/tables", tmp, fs::copy_options::recursive);
    {
        std::ofstream out(tmp / "t5.txt", std::ios::app);
        out << "# tampered\n";
    }
    CHECK_THROWS_AS(Tables::load(tmp), error);
    fs::remove_all(tmp);
}
