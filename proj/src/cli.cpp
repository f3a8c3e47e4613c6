#include "nplay/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>

#include "nplay/notation.hpp"
#include "nplay/partizan.hpp"
#include "nplay/tables.hpp"

#ifndef NPLAY_DEFAULT_DATA_DIR
#define NPLAY_DEFAULT_DATA_DIR "data"
#endif

namespace nplay {

namespace {

using nlohmann::json;

struct CliError {
    int code;
    std::string message;
};

int parse_player(const std::string& tok, int np) {
    if (tok == "L") return 0;
    if (tok == "R") return np - 1;
    if (tok.size() >= 2 && tok[0] == 'C') {
        const int idx = std::stoi(tok.substr(1));
        if (idx >= 1 && idx <= np - 2) return idx;
    }
    throw CliError{2, "unknown player '" + tok + "' for " + std::to_string(np) + " players"};
}

std::string outcome_tuple_str(const PartizanOutcome& o) {
    std::string s = "(";
    for (std::size_t i = 0; i < o.by_first.size(); ++i) {
        if (i) s += ",";
        s += o.by_first[i].str();
    }
    return s + ")";
}

struct Session {
    int players = 3;
    std::string format = "text";
    std::string data_dir = NPLAY_DEFAULT_DATA_DIR;
    std::size_t budget = 1u << 22;
    bool compact = false;

    PlayerCount n() const { return PlayerCount(players); }
    Tables tables() const { return Tables::load(std::filesystem::path(data_dir) / "tables"); }
};

// Star expressions carrying compact-only markers are appendix notation;
// everything else is the verbose grammar. --compact forces the former.
ParsedExpr parse_cli_expr(const Session& s, const std::string& text, GameStore& store,
                          PartizanStore* pstore) {
    const bool looks_compact =
        !text.empty() && text[0] == '*' && text.find_first_of("_#(") != std::string::npos;
    if (s.compact || looks_compact) return {parse_compact(store, text)};
    return parse_expr(text, store, pstore);
}

void emit_outcome(const Session& s, const std::string& expr, const std::string& outcome_text,
                  std::ostream& out) {
    if (s.format == "json")
        out << json{{"expr", expr}, {"players", s.players}, {"outcome", outcome_text}}.dump()
            << "\n";
    else if (s.format == "csv")
        out << "expr,players,outcome\n\"" << expr << "\"," << s.players << "," << outcome_text
            << "\n";
    else
        out << outcome_text << "\n";
}

int cmd_outcome(const Session& s, const std::string& expr, std::ostream& out) {
    GameStore store(s.budget);
    PartizanStore pstore(store, s.n(), s.budget);
    ParsedExpr parsed = parse_cli_expr(s, expr, store, &pstore);
    std::string text = parsed.is_partizan()
                           ? outcome_tuple_str(p_outcome(pstore, parsed.partizan()))
                           : outcome(store, parsed.impartial(), s.n()).str();
    emit_outcome(s, expr, text, out);
    return 0;
}

int cmd_nim(const Session& s, const std::vector<int>& heaps, bool closed_form, bool cross_check,
            std::ostream& out, std::ostream& err) {
    const NimPosition p = NimPosition::of(heaps);
    std::string expr;
    for (std::size_t i = 0; i < p.heaps.size(); ++i)
        expr += (i ? " " : "") + std::to_string(p.heaps[i]);
    auto closed = [&]() -> Outcome {
        if (s.players == 3) return nim_outcome_closed3(p);
        if (p.heaps.size() <= 1) return one_heap_outcome(p.heaps.empty() ? 0 : p.heaps[0], s.n());
        if (p.heaps.size() == 2) return two_heap_outcome(p.heaps[0], p.heaps[1], s.n());
        throw CliError{2, "no closed form for " + std::to_string(p.heaps.size()) + " heaps with " +
                              std::to_string(s.players) + " players"};
    };
    Outcome result = Outcome(0, s.n());
    if (closed_form && !cross_check) {
        result = closed();
    } else {
        GameStore store(s.budget);
        result = nim_outcome_engine(store, p, s.n());
        if (cross_check) {
            const Outcome c = closed();
            if (!(c == result)) {
                err << "closed form " << c.str() << " disagrees with engine " << result.str()
                    << "\n";
                return 1;
            }
        }
    }
    emit_outcome(s, expr, result.str(), out);
    return 0;
}

int cmd_quotient(const Session& s, std::ostream& out) {
    const NimQuotient q = quotient_build();
    if (s.format == "json") {
        json elems = json::array(), pi_row = json::array(), mult = json::array();
        for (int i = 0; i < 16; ++i) {
            elems.push_back(q.elements[i].name());
            pi_row.push_back(q.outcomes[i].str());
            json row = json::array();
            for (int j = 0; j < 16; ++j) row.push_back(q.elements[q.mult[i][j]].name());
            mult.push_back(row);
        }
        out << json{{"elements", elems}, {"pi", pi_row}, {"mult", mult}}.dump() << "\n";
        return 0;
    }
    if (s.format == "text") {
        out << "elements:";
        for (int i = 0; i < 16; ++i) out << " " << q.elements[i].name();
        out << "\npi:      ";
        for (int i = 0; i < 16; ++i) out << " " << q.outcomes[i].str();
        out << "\n";
    }
    // multiplication table as CSV in both text and csv formats
    out << "*";
    for (int j = 0; j < 16; ++j) out << "," << q.elements[j].name();
    out << "\n";
    for (int i = 0; i < 16; ++i) {
        out << q.elements[i].name();
        for (int j = 0; j < 16; ++j) out << "," << q.elements[q.mult[i][j]].name();
        out << "\n";
    }
    if (s.format == "csv") {
        out << "Pi";
        for (int i = 0; i < 16; ++i) out << "," << q.outcomes[i].str();
        out << "\n";
    }
    return 0;
}

int cmd_verify(const Session& s, const std::string& table, std::ostream& out) {
    const Tables tables = s.tables();
    GameStore store(s.budget);
    const VerifyResult r = verify_table(table, tables, store);
    if (s.format == "json") {
        out << json{{"table", r.table},
                    {"checked", r.checked},
                    {"mismatched", r.mismatched},
                    {"skipped", r.skipped},
                    {"messages", r.messages}}
                   .dump()
            << "\n";
    } else {
        out << r.table << ": " << r.checked << " checked, " << r.mismatched << " mismatched, "
            << r.skipped << " skipped\n";
        for (const auto& m : r.messages) out << "  " << m << "\n";
    }
    return r.ok() ? 0 : 1;
}

int cmd_compare(const Session& s, const std::string& player, const std::string& eg,
                const std::string& eh, std::ostream& out) {
    GameStore store(s.budget);
    PartizanStore pstore(store, s.n(), s.budget);
    const int seat = parse_player(player, s.players);
    ParsedExpr pg = parse_cli_expr(s, eg, store, &pstore);
    ParsedExpr ph = parse_cli_expr(s, eh, store, &pstore);
    const PGameId g = pg.is_partizan() ? pg.partizan() : pstore.embed(pg.impartial());
    const PGameId h = ph.is_partizan() ? ph.partizan() : pstore.embed(ph.impartial());
    const auto pool = default_partizan_pool(pstore);
    const CompareVerdict v = compare(pstore, g, h, seat, pool);
    switch (v.kind) {
        case CompareVerdict::Kind::proven:
            out << "PROVEN(" << v.rule << ")\n";
            break;
        case CompareVerdict::Kind::refuted:
            out << "REFUTED(witness " << print_game(pstore, v.witness) << ", moving "
                << v.order << ")\n";
            break;
        case CompareVerdict::Kind::unknown:
            out << "UNKNOWN(" << v.budget << ")\n";
            break;
    }
    return 0;
}

int cmd_absorbing(const Session& s, const std::string& expr, std::ostream& out) {
    GameStore store(s.budget);
    const Tables tables = s.tables();
    ParsedExpr parsed = parse_cli_expr(s, expr, store, nullptr);
    if (parsed.is_partizan()) throw CliError{2, "absorbing takes an impartial game"};
    const GameId g = parsed.impartial();
    if (absorbing_certify(store, g, s.n())) {
        out << "CERTIFIED\n";
        return 0;
    }
    const GamePool pool = default_refutation_pool(store, tables, s.n());
    if (auto w = absorbing_refute(store, g, pool, s.n())) {
        out << "REFUTED(witness " << print_game(store, *w) << ")\n";
        return 0;
    }
    out << "UNKNOWN(not certified; no witness among " << pool.games.size() << " pool games"
        << (pool.truncated ? ", pool truncated by budget" : "") << ")\n";
    return pool.truncated ? 3 : 0;
}

int cmd_laws(const Session& s, const std::string& law, int max_birthday, int k, int m,
             std::ostream& out, std::ostream& err) {
    GameStore store(s.budget);
    GamePool pool = enumerate_games(store, max_birthday);
    std::vector<std::pair<Law, std::pair<int, int>>> runs;
    auto want = [&](const std::string& name) { return law.empty() || law == name; };
    if (want("next-generation")) runs.push_back({Law::next_generation, {0, 0}});
    if (want("other-procreation")) {
        if (!law.empty())
            runs.push_back({Law::other_procreation, {k, m}});
        else if (s.players > k * m)
            runs.push_back({Law::other_procreation, {k, m}});
    }
    if (want("mirror")) runs.push_back({Law::mirror, {0, 0}});
    if (want("revert-inclusion")) runs.push_back({Law::revert_inclusion, {0, 0}});
    if (runs.empty()) throw CliError{2, "unknown law '" + law + "'"};
    bool violated = false;
    for (const auto& [l, km] : runs) {
        const auto violations = check_law(store, l, pool, s.n(), km.first, km.second);
        for (const auto& v : violations) {
            violated = true;
            json tuple = json::array();
            for (GameId g : v.tuple) tuple.push_back(print_game(store, g));
            out << json{{"law", v.law}, {"tuple", tuple}, {"expected", v.expected},
                        {"got", v.got}}
                       .dump()
                << "\n";
        }
        err << law_name(l) << ": " << pool.games.size() << " pool games, "
            << violations.size() << " violations\n";
    }
    return violated ? 1 : 0;
}

int cmd_search(const Session& s, const std::string& question, std::ostream& out) {
    GameStore store(s.budget);
    const Tables tables = s.tables();
    if (question == "trebling") {
        const GamePool pool = default_refutation_pool(store, tables, PlayerCount(3));
        const auto hits = search_trebling(store, pool);
        out << "trebling: searched " << pool.games.size() << " pool games"
            << (pool.truncated ? " (truncated by budget)" : "") << "; " << hits.size()
            << " games with outcome N and P in the triple\n";
        for (GameId g : hits) out << "  " << print_game(store, g) << "\n";
        if (pool.truncated) return 3;
        return hits.empty() ? 0 : 1;
    }
    if (question == "nim-periodicity") {
        const int prefix = 3 * s.players;
        int verified = 0, total = 0;
        std::vector<int> heaps;
        auto rec = [&](auto&& self, int min_size) -> void {
            GameId g = store.zero();
            for (int h : heaps) g = store.sum(g, store.nim_heap(h));
            ++total;
            if (check_n_periodicity(store, g, s.n(), prefix)) ++verified;
            if (heaps.size() == 3) return;
            for (int h = min_size; h <= 4; ++h) {
                heaps.push_back(h);
                self(self, h);
                heaps.pop_back();
            }
        };
        rec(rec, 2);  // heaps of ones are the periodicity variable itself
        out << "nim-periodicity: " << verified << "/" << total
            << " positions verified to horizon " << prefix << " ones (N = " << s.players
            << "); finite evidence only, no claim beyond the horizon\n";
        return verified == total ? 0 : 1;
    }
    if (question == "quotient-absorbing") {
        // evidence for the open question: do N copies of *2 and 2 copies of
        // *N absorb within nim contexts?
        const int np = s.players;
        if (np <= 2) throw CliError{2, "quotient-absorbing needs more than 2 players"};
        GameId a = store.n_copies(store.nim_heap(2), np);
        GameId b = store.n_copies(store.nim_heap(np), 2);
        int contexts = 0, failures = 0;
        std::vector<int> heaps;
        auto rec = [&](auto&& self, int min_size) -> void {
            GameId x = store.zero();
            for (int h : heaps) x = store.sum(x, store.nim_heap(h));
            ++contexts;
            if (!outcome(store, store.sum(a, x), s.n()).empty() ||
                !outcome(store, store.sum(b, x), s.n()).empty())
                ++failures;
            if (heaps.size() == 4) return;
            for (int h = min_size; h <= np + 2; ++h) {
                heaps.push_back(h);
                self(self, h);
                heaps.pop_back();
            }
        };
        rec(rec, 1);
        out << "quotient-absorbing (N = " << np << "): " << contexts
            << " nim contexts checked, " << failures
            << " with a nonempty outcome; evidence only, within caps\n";
        return failures == 0 ? 0 : 1;
    }
    throw CliError{2, "unknown question '" + question + "'"};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"engine for short N-player games under normal play"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Session s;
    app.add_option("--players", s.players, "number of players")->check(CLI::Range(2, 16));
    app.add_option("--format", s.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--data-dir", s.data_dir, "fixture directory");
    app.add_option("--budget", s.budget, "node-count cap for stores and pools");
    app.add_flag("--compact", s.compact, "parse game arguments as appendix compact notation");

    std::string expr, table, player, eg, eh, law, question;
    std::vector<int> heaps;
    bool closed_form = false, cross_check = false;
    int max_birthday = 3, op_k = 2, op_m = 1;

    auto* c_outcome = app.add_subcommand("outcome", "impartial or partizan outcome");
    c_outcome->add_option("expr", expr)->required();

    auto* c_nim = app.add_subcommand("nim", "outcome of a nim position");
    c_nim->add_option("heaps", heaps, "heap sizes");
    c_nim->add_flag("--closed-form", closed_form, "use the closed form only");
    c_nim->add_flag("--cross-check", cross_check, "engine and closed form must agree");

    app.add_subcommand("nim-quotient", "emit the three-player nim quotient");

    auto* c_verify = app.add_subcommand("verify", "golden table comparison");
    c_verify->add_option("--table", table, "T1..T8 or two-heap")->required();

    auto* c_compare = app.add_subcommand("compare", "semidecide g <=_P h");
    c_compare->add_option("--player", player, "L, C1.., R")->required();
    c_compare->add_option("exprG", eg)->required();
    c_compare->add_option("exprH", eh)->required();

    auto* c_absorbing = app.add_subcommand("absorbing", "certify or refute an absorbing game");
    c_absorbing->add_option("expr", expr)->required();

    auto* c_laws = app.add_subcommand("laws", "run the sum-law checkers");
    c_laws->add_option("--law", law, "next-generation, other-procreation, mirror, revert-inclusion");
    c_laws->add_option("--max-birthday", max_birthday)->check(CLI::Range(0, 3));
    c_laws->add_option("--k", op_k, "summand count for other-procreation");
    c_laws->add_option("--m", op_m, "player index for other-procreation");

    auto* c_search = app.add_subcommand("search", "bounded searches for the open questions");
    c_search->add_option("--question", question, "trebling, nim-periodicity, quotient-absorbing")
        ->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (c_outcome->parsed()) return cmd_outcome(s, expr, out);
        if (c_nim->parsed()) return cmd_nim(s, heaps, closed_form, cross_check, out, err);
        if (app.get_subcommand("nim-quotient")->parsed()) return cmd_quotient(s, out);
        if (c_verify->parsed()) return cmd_verify(s, table, out);
        if (c_compare->parsed()) return cmd_compare(s, player, eg, eh, out);
        if (c_absorbing->parsed()) return cmd_absorbing(s, expr, out);
        if (c_laws->parsed()) return cmd_laws(s, law, max_birthday, op_k, op_m, out, err);
        if (c_search->parsed()) return cmd_search(s, question, out);
        err << "no subcommand\n";
        return 2;
    } catch (const CliError& e) {
        err << e.message << "\n";
        return e.code;
    } catch (const resource_error& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_players& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << e.what() << "\n";
        return 2;
    }
}

}  // namespace nplay
