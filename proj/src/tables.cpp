#include "nplay/tables.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "nplay/notation.hpp"

namespace nplay {

namespace {

const PlayerCount kThree(3);

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> data_lines(const std::string& content) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) rows.push_back(std::move(toks));
    }
    return rows;
}

std::vector<int> parse_heaps(const std::string& csv) {
    std::vector<int> out;
    if (csv == "-") return out;
    std::istringstream in(csv);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(std::stoi(part));
    return out;
}

const std::vector<std::string> kClassOrder{"-", "N", "O", "P", "NO", "OP", "PN"};

Outcome o3(const std::string& s) { return Outcome::parse(s, kThree); }

// index in the paper's class order, keyed by mask so print forms don't matter
int class_index(const Outcome& o) {
    switch (o.mask()) {
        case 0b000: return 0;
        case 0b001: return 1;
        case 0b010: return 2;
        case 0b100: return 3;
        case 0b011: return 4;
        case 0b110: return 5;
        case 0b101: return 6;
    }
    throw error("not a proper three-player outcome class");
}

int class_index(const std::string& s) { return class_index(o3(s)); }

void mismatch(VerifyResult& r, const std::string& what) {
    ++r.mismatched;
    r.messages.push_back(what);
}

VerifyResult verify_t1(const Tables& t, GameStore& s) {
    VerifyResult r{"T1"};
    for (const auto& row : t.t1)
        for (int k = 0; k <= 3; ++k) {
            std::vector<int> heaps(k, 1);
            heaps.insert(heaps.end(), row.extra_heaps.begin(), row.extra_heaps.end());
            ++r.checked;
            Outcome got = nim_outcome_engine(s, NimPosition::of(heaps), kThree);
            if (!(got == o3(row.cells[k])))
                mismatch(r, "T1 row k=" + std::to_string(k) + ": expected " + row.cells[k] +
                                ", engine says " + got.str());
        }
    return r;
}

VerifyResult verify_t2(const Tables& t, GameStore& s) {
    VerifyResult r{"T2"};
    // soundness over the small pool: observed sums stay inside the bounds
    GamePool pool = default_law_pool(s, t);
    for (GameId g : pool.games) {
        const Outcome og = outcome(s, g, kThree);
        for (GameId h : pool.games) {
            const Outcome oh = outcome(s, h, kThree);
            const Outcome osum = outcome(s, s.sum(g, h), kThree);
            const std::string& bound = t.t2[class_index(og)][class_index(oh)];
            ++r.checked;
            const std::uint32_t allowed = bound == "NOP" ? 0b111u : o3(bound).mask();
            if (osum.mask() & ~allowed)
                mismatch(r, "T2: o(G)=" + og.str() + " o(H)=" + oh.str() + " gave o(G+H)=" +
                                osum.str() + " outside " + bound);
        }
    }
    // completeness: the sum-example rows witness every achievable triple
    std::map<std::tuple<int, int, std::uint32_t>, bool> seen;
    for (const auto& row : t.t8) {
        int a = class_index(row.og), b = class_index(row.oh);
        if (a > b) std::swap(a, b);
        seen[{a, b, o3(row.osum).mask()}] = true;
    }
    for (int a = 0; a < 7; ++a)
        for (int b = a; b < 7; ++b) {
            const std::string& bound = t.t2[a][b];
            const std::uint32_t allowed = bound == "NOP" ? 0b111u : o3(bound).mask();
            for (std::uint32_t m = 0; m < 8; ++m) {
                if (m & ~allowed) continue;
                if (bound == "NOP" && m == 0b111u) continue;
                ++r.checked;
                if (!seen.count({a, b, m}))
                    mismatch(r, "T2 cell (" + kClassOrder[a] + "," + kClassOrder[b] +
                                    ") subset mask " + std::to_string(m) + " unwitnessed");
            }
        }
    return r;
}

VerifyResult verify_t3(const Tables& t, GameStore& s) {
    VerifyResult r{"T3"};
    for (const auto& row : t.t3) {
        std::vector<std::vector<int>> extras;
        if (row.label == "-")
            extras = {{}};
        else if (row.label == "2")
            extras = {{2}};
        else if (row.label == "m")
            extras = {{3}, {4}, {5}, {6}};
        else if (row.label == "2,2")
            extras = {{2, 2}};
        else if (row.label == "2,m")
            extras = {{2, 3}, {2, 4}, {2, 5}};
        else
            throw error("unknown T3 row " + row.label);
        for (const auto& extra : extras)
            for (int k = 0; k <= 8; ++k) {
                std::vector<int> heaps(k, 1);
                heaps.insert(heaps.end(), extra.begin(), extra.end());
                const NimPosition p = NimPosition::of(heaps);
                ++r.checked;
                const Outcome want = o3(row.cells[k % 3]);
                if (!(nim_outcome_closed3(p) == want) ||
                    !(nim_outcome_engine(s, p, kThree) == want))
                    mismatch(r, "T3 row " + row.label + " k=" + std::to_string(k));
            }
    }
    return r;
}

VerifyResult verify_t4(const Tables& t, GameStore& s) {
    VerifyResult r{"T4"};
    std::map<std::pair<std::string, std::string>, std::pair<bool, std::uint32_t>> bound;
    for (const auto& row : t.t4)
        bound[{row.kind, row.row}] = {row.exact,
                                      row.bound == "NOP" ? 0b111u : o3(row.bound).mask()};
    GamePool pool = default_law_pool(s, t);
    for (GameId g : pool.games) {
        const Outcome og = outcome(s, g, kThree);
        const Outcome o2 = outcome(s, s.sum(g, g), kThree);
        const Outcome o3x = outcome(s, s.n_copies(g, 3), kThree);
        for (auto [kind, oc] : {std::pair{std::string("double"), o2},
                                std::pair{std::string("treble"), o3x}}) {
            const auto [exact, mask] = bound.at({kind, kClassOrder[class_index(og)]});
            ++r.checked;
            if (exact ? oc.mask() != mask : (oc.mask() & ~mask) != 0)
                mismatch(r, "T4 " + kind + " row " + og.str() + " gave " + oc.str());
        }
    }
    return r;
}

VerifyResult verify_t5(const Tables& t, GameStore&) {
    VerifyResult r{"T5"};
    const NimQuotient q = quotient_build();
    if (t.t5.size() != 16) {
        mismatch(r, "T5 fixture must have 16 elements");
        return r;
    }
    for (int i = 0; i < 16; ++i) {
        ++r.checked;
        if (q.elements[i].name() != t.t5[i].first)
            mismatch(r, "T5 element " + std::to_string(i) + ": " + q.elements[i].name() +
                            " vs fixture " + t.t5[i].first);
        else if (!(q.outcomes[i] == o3(t.t5[i].second)))
            mismatch(r, "T5 outcome for " + t.t5[i].first + ": " + q.outcomes[i].str() +
                            " vs fixture " + t.t5[i].second);
    }
    return r;
}

VerifyResult verify_examples(const char* name, const std::vector<Tables::ExampleRow>& rows,
                             GameStore& s, int copies) {
    VerifyResult r{name};
    for (const auto& row : rows) {
        if (row.game == "?") {
            ++r.skipped;
            continue;
        }
        ++r.checked;
        const GameId g = parse_compact(s, row.game);
        const Outcome og = outcome(s, g, kThree);
        const Outcome omult = outcome(s, s.n_copies(g, copies), kThree);
        if (!(og == o3(row.row)))
            mismatch(r, std::string(name) + " " + row.game + ": o(G)=" + og.str() +
                            ", table row " + row.row);
        else if (!(omult == o3(row.col)))
            mismatch(r, std::string(name) + " " + row.game + ": o(" + std::to_string(copies) +
                            "G)=" + omult.str() + ", table column " + row.col);
    }
    return r;
}

VerifyResult verify_t8(const Tables& t, GameStore& s) {
    VerifyResult r{"T8"};
    for (const auto& row : t.t8) {
        ++r.checked;
        const GameId g = parse_compact(s, row.game_g);
        const GameId h = parse_compact(s, row.game_h);
        const Outcome og = outcome(s, g, kThree), oh = outcome(s, h, kThree);
        const Outcome osum = outcome(s, s.sum(g, h), kThree);
        if (!(og == o3(row.og)))
            mismatch(r, "T8 " + row.game_g + ": o(G)=" + og.str() + " row says " + row.og);
        else if (!(oh == o3(row.oh)))
            mismatch(r, "T8 " + row.game_h + ": o(H)=" + oh.str() + " row says " + row.oh);
        else if (!(osum == o3(row.osum)))
            mismatch(r, "T8 " + row.game_g + " + " + row.game_h + ": o=" + osum.str() +
                            " row says " + row.osum);
    }
    return r;
}

VerifyResult verify_two_heap(GameStore& s) {
    VerifyResult r{"two-heap"};
    for (int np = 3; np <= 5; ++np)
        for (int i = 0; i <= np + 3; ++i)
            for (int j = i; j <= np + 3; ++j) {
                ++r.checked;
                const PlayerCount n(np);
                const Outcome closed = two_heap_outcome(i, j, n);
                const Outcome brute = nim_outcome_engine(s, NimPosition::of({i, j}), n);
                if (!(closed == brute))
                    mismatch(r, "two-heap N=" + std::to_string(np) + " (" + std::to_string(i) +
                                    "," + std::to_string(j) + "): " + closed.str() + " vs " +
                                    brute.str());
            }
    return r;
}

}  // namespace

std::uint64_t fnv64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Tables Tables::load(const std::filesystem::path& dir) {
    // digest check first: fixtures are transcriptions, not code
    std::map<std::string, std::uint64_t> manifest;
    for (const auto& row : data_lines(read_file(dir / "MANIFEST"))) {
        if (row.size() != 2) throw error("malformed MANIFEST line");
        manifest[row[0]] = std::stoull(row[1], nullptr, 16);
    }
    std::map<std::string, std::string> contents;
    for (const auto& [name, digest] : manifest) {
        std::string data = read_file(dir / name);
        if (fnv64(data) != digest)
            throw error("fixture " + name + " does not match its manifest digest");
        contents[name] = std::move(data);
    }

    Tables t;
    for (const auto& row : data_lines(contents.at("t1.txt"))) {
        if (row.size() != 5) throw error("t1 rows need 5 fields");
        t.t1.push_back({parse_heaps(row[0]), {row.begin() + 1, row.end()}});
    }
    for (const auto& row : data_lines(contents.at("t2.txt"))) {
        if (row.size() != 8) throw error("t2 rows need 8 fields");
        t.t2.push_back({row.begin() + 1, row.end()});
    }
    if (t.t2.size() != 7) throw error("t2 needs 7 rows");
    for (const auto& row : data_lines(contents.at("t3.txt"))) {
        if (row.size() != 4) throw error("t3 rows need 4 fields");
        t.t3.push_back({row[0], {row.begin() + 1, row.end()}});
    }
    for (const auto& row : data_lines(contents.at("t4.txt"))) {
        if (row.size() != 4) throw error("t4 rows need 4 fields");
        t.t4.push_back({row[0], row[1], row[2] == "eq", row[3]});
    }
    for (const auto& row : data_lines(contents.at("t5.txt"))) {
        if (row.size() != 2) throw error("t5 rows need 2 fields");
        t.t5.emplace_back(row[0], row[1]);
    }
    for (const auto& row : data_lines(contents.at("t6.txt"))) {
        if (row.size() != 3) throw error("t6 rows need 3 fields");
        t.t6.push_back({row[0], row[1], row[2]});
    }
    for (const auto& row : data_lines(contents.at("t7.txt"))) {
        if (row.size() != 3) throw error("t7 rows need 3 fields");
        t.t7.push_back({row[0], row[1], row[2]});
    }
    for (const auto& row : data_lines(contents.at("t8.txt"))) {
        if (row.size() != 5) throw error("t8 rows need 5 fields");
        t.t8.push_back({row[0], row[1], row[2], row[3], row[4]});
    }
    return t;
}

VerifyResult verify_table(const std::string& id, const Tables& tables, GameStore& store) {
    if (id == "T1") return verify_t1(tables, store);
    if (id == "T2") return verify_t2(tables, store);
    if (id == "T3") return verify_t3(tables, store);
    if (id == "T4") return verify_t4(tables, store);
    if (id == "T5") return verify_t5(tables, store);
    if (id == "T6") return verify_examples("T6", tables.t6, store, 2);
    if (id == "T7") return verify_examples("T7", tables.t7, store, 3);
    if (id == "T8") return verify_t8(tables, store);
    if (id == "two-heap") return verify_two_heap(store);
    throw error("unknown table id " + id);
}

std::vector<GameId> appendix_games(GameStore& store, const Tables& tables) {
    std::vector<GameId> out;
    for (const auto& row : tables.t6) out.push_back(parse_compact(store, row.game));
    for (const auto& row : tables.t7)
        if (row.game != "?") out.push_back(parse_compact(store, row.game));
    for (const auto& row : tables.t8) {
        out.push_back(parse_compact(store, row.game_g));
        out.push_back(parse_compact(store, row.game_h));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// the games of birthday <= maxb, layer by layer, without any closure
std::vector<GameId> birthday_games(GameStore& store, int maxb) {
    std::vector<GameId> acc{store.zero()}, layer{store.zero()};
    for (int b = 1; b <= maxb; ++b) {
        std::vector<GameId> next;
        for (std::uint32_t mask = 0; mask < (1u << layer.size()); ++mask) {
            std::vector<GameId> opts;
            for (std::size_t i = 0; i < layer.size(); ++i)
                if ((mask >> i) & 1u) opts.push_back(layer[i]);
            next.push_back(store.intern(std::move(opts)));
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        layer = std::move(next);
        acc.insert(acc.end(), layer.begin(), layer.end());
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

std::vector<GameId> nim_seeds(GameStore& store, int max_heaps, int max_size) {
    std::vector<GameId> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int min_size) -> void {
        GameId g = store.zero();
        for (int h : cur) g = store.sum(g, store.nim_heap(h));
        out.push_back(g);
        if (static_cast<int>(cur.size()) == max_heaps) return;
        for (int h = min_size; h <= max_size; ++h) {
            cur.push_back(h);
            self(self, h);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

}  // namespace

GamePool default_law_pool(GameStore& store, const Tables& tables) {
    GamePool pool;
    pool.max_birthday = 3;
    std::vector<GameId> games = birthday_games(store, 3);
    auto appendix = appendix_games(store, tables);
    games.insert(games.end(), appendix.begin(), appendix.end());
    auto nims = nim_seeds(store, 3, 3);
    games.insert(games.end(), nims.begin(), nims.end());
    std::sort(games.begin(), games.end());
    games.erase(std::unique(games.begin(), games.end()), games.end());
    pool.games = std::move(games);
    return pool;
}

GamePool default_refutation_pool(GameStore& store, const Tables& tables, PlayerCount n) {
    // Canonical interning order fixes the id order and hence which witness a
    // refutation search reports first: the birthday games, then the
    // {0, (N-1) ones} gadget and its wrap (the construction separating
    // N ones from 0), then the appendix games and small nim.
    std::vector<GameId> seeds = birthday_games(store, 3);
    const GameId gadget =
        store.intern({store.zero(), store.n_copies(store.nim_heap(1), n.value() - 1)});
    seeds.push_back(gadget);
    seeds.push_back(store.wrap(gadget));
    auto appendix = appendix_games(store, tables);
    seeds.insert(seeds.end(), appendix.begin(), appendix.end());
    auto nims = nim_seeds(store, 4, 4);
    seeds.insert(seeds.end(), nims.begin(), nims.end());
    return enumerate_games(store, 3, seeds);
}

}  // namespace nplay
