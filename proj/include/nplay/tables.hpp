#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nplay/nim.hpp"
#include "nplay/sum_laws.hpp"

namespace nplay {

// Golden fixtures, loaded from the data directory and checked against the
// digest manifest before use.
struct Tables {
    struct NimRow {
        std::vector<int> extra_heaps;  // beyond the k ones
        std::vector<std::string> cells;
    };
    struct PatternRow {
        std::string label;  // "-", "2", "m", "2,2", "2,m"
        std::vector<std::string> cells;
    };
    struct BoundRow {
        std::string kind;  // "double" or "treble"
        std::string row;
        bool exact;
        std::string bound;
    };
    struct ExampleRow {
        std::string row, col, game;
    };
    struct SumRow {
        std::string og, oh, osum, game_g, game_h;
    };

    std::vector<NimRow> t1;
    std::vector<std::vector<std::string>> t2;  // 7x7, row/col order -,N,O,P,NO,OP,PN
    std::vector<PatternRow> t3;
    std::vector<BoundRow> t4;
    std::vector<std::pair<std::string, std::string>> t5;  // element name, outcome
    std::vector<ExampleRow> t6;
    std::vector<ExampleRow> t7;  // game "?" marks an open cell
    std::vector<SumRow> t8;

    static Tables load(const std::filesystem::path& dir);
};

std::uint64_t fnv64(std::string_view data);

struct VerifyResult {
    std::string table;
    int checked = 0;
    int mismatched = 0;
    int skipped = 0;
    std::vector<std::string> messages;

    bool ok() const { return mismatched == 0; }
};

// Golden comparisons for T1..T8 and the two-heap theorem; ids are "T1".."T8"
// and "two-heap". All tables are three-player except two-heap (N = 3,4,5).
VerifyResult verify_table(const std::string& id, const Tables& tables, GameStore& store);

// Every distinct compact game appearing in tables 6-8 (skipping "?" cells).
std::vector<GameId> appendix_games(GameStore& store, const Tables& tables);

// Small pool for exhaustive law checks: birthday <= 3 games, the appendix
// games, and nim positions with <= 3 heaps of size <= 3 (no closure).
GamePool default_law_pool(GameStore& store, const Tables& tables);

// Context pool for refutation searches: birthday <= 3 games, appendix games,
// nim positions with <= 4 heaps of size <= 4 and the {0, (N-1) ones} gadget,
// closed under one wrap and one pairwise sum.
GamePool default_refutation_pool(GameStore& store, const Tables& tables, PlayerCount n);

}  // namespace nplay
