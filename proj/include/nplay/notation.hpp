#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "nplay/partizan.hpp"

namespace nplay {

// Compact impartial notation (input only). A game is '0' or '*' followed by
// one or more elems; an elem is a digit or a parenthesized elem list,
// followed by subscripts. Subscripts apply left to right: '#' wraps the game
// built so far, a digit d adds the heap *d. A parenthesized base with a
// single elem is grouping; with several it is the game whose options are
// those elems' games. A lone '*' is the one-heap. Multi-digit runs are
// several elems, never one number: "*21" is {*2, *}.
GameId parse_compact(GameStore& store, std::string_view text);

struct ParsedExpr {
    std::variant<GameId, PGameId> value;
    bool is_partizan() const { return std::holds_alternative<PGameId>(value); }
    GameId impartial() const { return std::get<GameId>(value); }
    PGameId partizan() const { return std::get<PGameId>(value); }
};

// Verbose expression language: 0, *, *n, {e,...} (impartial), bar literals
// {..|..|..} with N-1 bars (partizan), sum(...), copies(k,e), wrap(e),
// one(P), int(k,P), conj(e), negsum(e), embed(e); players L, C1..C{N-2}, R.
// Impartial operands are embedded automatically where a partizan game is
// required. `partizan` may be null when no partizan constructs are used.
ParsedExpr parse_expr(std::string_view text, GameStore& store, PartizanStore* partizan);

// Verbose printer; nim-heaps print as *n, everything else as a brace tree
// with options in canonical id order. parse_expr inverts it.
std::string print_game(GameStore& store, GameId g);

// Bar-literal printer (embeddings print as embed(...)); parse_expr inverts it.
std::string print_game(PartizanStore& store, PGameId g);

}  // namespace nplay
