#include "nplay/notation.hpp"

#include <cctype>

namespace nplay {

namespace {

struct CompactParser {
    GameStore& store;
    std::string_view text;
    std::size_t pos = 0;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos); }

    GameId parse() {
        GameId g = game();
        if (!eof()) fail("trailing input");
        return g;
    }

    GameId game() {
        if (eof()) fail("empty input");
        if (peek() == '0') {
            ++pos;
            return store.zero();
        }
        if (peek() != '*') fail("expected '0' or '*'");
        ++pos;
        if (eof() || !is_elem_start(peek())) return store.nim_heap(1);  // bare '*'
        std::vector<GameId> elems;
        while (!eof() && is_elem_start(peek())) elems.push_back(elem());
        if (elems.size() == 1) return elems[0];
        return store.intern(std::move(elems));
    }

    static bool is_elem_start(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(';
    }

    GameId elem() {
        GameId g = base();
        while (!eof() && peek() == '_') {
            ++pos;
            if (!eof() && peek() == '{') {
                ++pos;
                if (eof() || peek() == '}') fail("empty subscript group");
                while (!eof() && peek() != '}') g = apply_sub(g);
                if (eof()) fail("unterminated subscript group");
                ++pos;
            } else {
                g = apply_sub(g);
            }
        }
        return g;
    }

    GameId apply_sub(GameId g) {
        if (eof()) fail("missing subscript");
        const char c = peek();
        if (c == '#') {
            ++pos;
            return store.wrap(g);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            ++pos;
            return store.sum(g, store.nim_heap(c - '0'));
        }
        fail("subscript must be '#' or a digit");
    }

    GameId base() {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            ++pos;
            return store.nim_heap(c - '0');
        }
        if (c != '(') fail("expected digit or '('");
        ++pos;
        std::vector<GameId> elems;
        while (!eof() && is_elem_start(peek())) elems.push_back(elem());
        if (eof() || peek() != ')') fail("unterminated '('");
        ++pos;
        if (elems.empty()) fail("empty parentheses");
        if (elems.size() == 1) return elems[0];  // grouping
        return store.intern(std::move(elems));
    }
};

struct ExprParser {
    GameStore& store;
    PartizanStore* ps;
    std::string_view text;
    std::size_t pos = 0;

    using Value = std::variant<GameId, PGameId>;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos); }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (!eof() && peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    PartizanStore& partizan() {
        if (!ps) throw error("expression needs a partizan store");
        return *ps;
    }

    PGameId as_partizan(const Value& v) {
        if (std::holds_alternative<PGameId>(v)) return std::get<PGameId>(v);
        return partizan().embed(std::get<GameId>(v));
    }

    Value parse() {
        Value v = expr();
        skip_ws();
        if (!eof()) fail("trailing input");
        return v;
    }

    int integer_literal() {
        skip_ws();
        std::size_t start = pos;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        if (start == pos) fail("expected a number");
        return std::stoi(std::string(text.substr(start, pos - start)));
    }

    int player_token() {
        skip_ws();
        const int np = ps ? ps->seats() : 0;
        if (!ps) throw error("player tokens need a partizan store");
        if (eof()) fail("expected a player");
        if (peek() == 'L') {
            ++pos;
            return 0;
        }
        if (peek() == 'R') {
            ++pos;
            return np - 1;
        }
        if (peek() == 'C') {
            ++pos;
            int idx = integer_literal();
            if (idx < 1 || idx > np - 2) fail("no such center player");
            return idx;
        }
        fail("expected a player token (L, Ci, R)");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    Value expr() {
        skip_ws();
        if (eof()) fail("empty expression");
        const char c = peek();
        if (c == '0') {
            ++pos;
            return store.zero();
        }
        if (c == '*') {
            ++pos;
            std::size_t start = pos;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
            if (start == pos) return store.nim_heap(1);
            return store.nim_heap(std::stoi(std::string(text.substr(start, pos - start))));
        }
        if (c == '{') return braces();
        const std::string name = ident();
        if (name.empty()) fail("unexpected character");
        expect('(');
        Value result;
        if (name == "sum") {
            std::vector<Value> args{expr()};
            while (eat(',')) args.push_back(expr());
            bool any_partizan = false;
            for (const Value& v : args)
                if (std::holds_alternative<PGameId>(v)) any_partizan = true;
            if (any_partizan) {
                PGameId acc = partizan().zero();
                for (const Value& v : args) acc = partizan().sum(acc, as_partizan(v));
                result = acc;
            } else {
                GameId acc = store.zero();
                for (const Value& v : args) acc = store.sum(acc, std::get<GameId>(v));
                result = acc;
            }
        } else if (name == "copies") {
            const int k = integer_literal();
            expect(',');
            Value v = expr();
            if (std::holds_alternative<PGameId>(v))
                result = partizan().n_copies(std::get<PGameId>(v), k);
            else
                result = store.n_copies(std::get<GameId>(v), k);
        } else if (name == "wrap") {
            Value v = expr();
            if (std::holds_alternative<PGameId>(v)) fail("wrap needs an impartial game");
            result = store.wrap(std::get<GameId>(v));
        } else if (name == "one") {
            result = partizan().one(player_token());
        } else if (name == "int") {
            const int k = integer_literal();
            expect(',');
            result = partizan().integer(k, player_token());
        } else if (name == "conj") {
            result = partizan().conjugate(as_partizan(expr()));
        } else if (name == "negsum") {
            result = partizan().conj_sum(as_partizan(expr()));
        } else if (name == "embed") {
            Value v = expr();
            if (std::holds_alternative<PGameId>(v)) fail("embed needs an impartial game");
            result = partizan().embed(std::get<GameId>(v));
        } else {
            fail("unknown function '" + name + "'");
        }
        expect(')');
        return result;
    }

    // '{' already peeked: impartial {a,b,...} or partizan {..|..|..}
    Value braces() {
        expect('{');
        // scan ahead for a top-level bar to decide the flavor
        std::size_t depth = 0;
        bool has_bar = false;
        for (std::size_t i = pos; i < text.size(); ++i) {
            const char c = text[i];
            if (c == '{' || c == '(') ++depth;
            if (c == '}' || c == ')') {
                if (c == '}' && depth == 0) break;
                --depth;
            }
            if (c == '|' && depth == 0) has_bar = true;
        }
        if (!has_bar) {
            std::vector<GameId> opts;
            skip_ws();
            if (!eat('}')) {
                do {
                    Value v = expr();
                    if (std::holds_alternative<PGameId>(v))
                        fail("impartial braces cannot hold partizan games");
                    opts.push_back(std::get<GameId>(v));
                } while (eat(','));
                expect('}');
            }
            return store.intern(std::move(opts));
        }
        const int np = partizan().seats();
        std::vector<std::vector<PGameId>> slots;
        std::vector<PGameId> cur;
        while (true) {
            skip_ws();
            if (!eof() && (peek() == '|' || peek() == '}')) {
                slots.push_back(std::move(cur));
                cur.clear();
                if (peek() == '}') {
                    ++pos;
                    break;
                }
                ++pos;
                continue;
            }
            cur.push_back(as_partizan(expr()));
            skip_ws();
            if (!eof() && peek() == ',') ++pos;
        }
        if (static_cast<int>(slots.size()) != np)
            throw parse_error("bar literal needs exactly " + std::to_string(np - 1) + " bars for " +
                                  std::to_string(np) + " players",
                              pos);
        return partizan().intern(std::move(slots));
    }
};

void print_impartial(GameStore& store, GameId g, std::string& out) {
    const int heap = store.heap_size(g);
    if (heap == 0) {
        out += '0';
        return;
    }
    if (heap == 1) {
        out += '*';
        return;
    }
    if (heap > 1) {
        out += '*' + std::to_string(heap);
        return;
    }
    out += '{';
    bool first = true;
    for (GameId c : store.options(g)) {
        if (!first) out += ',';
        first = false;
        print_impartial(store, c, out);
    }
    out += '}';
}

void print_partizan(PartizanStore& store, PGameId g, std::string& out) {
    if (auto e = store.embedded(g)) {
        if (*e == store.impartial().zero()) {
            out += '0';
            return;
        }
        out += "embed(";
        print_impartial(store.impartial(), *e, out);
        out += ')';
        return;
    }
    out += '{';
    for (int i = 0; i < store.seats(); ++i) {
        if (i) out += '|';
        bool first = true;
        for (PGameId c : store.slot(g, i)) {
            if (!first) out += ',';
            first = false;
            print_partizan(store, c, out);
        }
    }
    out += '}';
}

}  // namespace

GameId parse_compact(GameStore& store, std::string_view text) {
    CompactParser p{store, text};
    return p.parse();
}

ParsedExpr parse_expr(std::string_view text, GameStore& store, PartizanStore* partizan) {
    ExprParser p{store, partizan, text};
    return {p.parse()};
}

std::string print_game(GameStore& store, GameId g) {
    std::string out;
    print_impartial(store, g, out);
    return out;
}

std::string print_game(PartizanStore& store, PGameId g) {
    std::string out;
    print_partizan(store, g, out);
    return out;
}

}  // namespace nplay
