#include "nplay/sum_laws.hpp"

#include <algorithm>
#include <unordered_map>

namespace nplay {

bool GamePool::contains(GameId g) const {
    return std::binary_search(games.begin(), games.end(), g);
}

GamePool enumerate_games(GameStore& store, int max_birthday, std::span<const GameId> seeds) {
    if (max_birthday < 0 || max_birthday > 3)
        throw error("enumerate_games supports birthdays 0..3");
    GamePool pool;
    pool.max_birthday = max_birthday;
    std::vector<GameId> acc{store.zero()};
    auto dedupe = [](std::vector<GameId>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    try {
        // generation b+1: all subsets of generation b
        std::vector<GameId> layer{store.zero()};
        for (int b = 1; b <= max_birthday; ++b) {
            std::vector<GameId> next;
            for (std::uint32_t mask = 0; mask < (1u << layer.size()); ++mask) {
                std::vector<GameId> opts;
                for (std::size_t i = 0; i < layer.size(); ++i)
                    if ((mask >> i) & 1u) opts.push_back(layer[i]);
                next.push_back(store.intern(std::move(opts)));
            }
            dedupe(next);
            layer = std::move(next);
            acc.insert(acc.end(), layer.begin(), layer.end());
        }
        acc.insert(acc.end(), seeds.begin(), seeds.end());
        dedupe(acc);
        const std::size_t base_count = acc.size();
        for (std::size_t i = 0; i < base_count; ++i) acc.push_back(store.wrap(acc[i]));
        dedupe(acc);
        const std::size_t wrapped_count = acc.size();
        for (std::size_t i = 0; i < wrapped_count; ++i)
            for (std::size_t j = i; j < wrapped_count; ++j) acc.push_back(store.sum(acc[i], acc[j]));
    } catch (const resource_error&) {
        pool.truncated = true;
    }
    dedupe(acc);
    pool.games = std::move(acc);
    return pool;
}

int undetermined_depth(GameStore& store, GameId g, PlayerCount n) {
    store.check(g);
    // depth(x) = 0 if o(x) != {}; else 1 + max over options (0 if none apply)
    std::unordered_map<std::uint32_t, int> depth;
    std::vector<GameId> order = store.subpositions(g);  // ascending ids: children first
    for (GameId x : order) {
        if (!outcome(store, x, n).empty()) {
            depth[x.value()] = 0;
            continue;
        }
        int best = 0;
        for (GameId c : store.options(x)) best = std::max(best, depth.at(c.value()));
        depth[x.value()] = best + 1;
    }
    return depth.at(g.value());
}

bool is_strongly_k_undetermined(GameStore& store, GameId g, int k, PlayerCount n) {
    if (k < 2) throw error("strong undeterminedness starts at k = 2");
    if (g == store.zero()) return false;
    for (GameId c : store.options(g))
        if (undetermined_depth(store, c, n) < k - 1) return false;
    return true;
}

bool absorbing_certify(GameStore& store, GameId g, PlayerCount n) {
    if (n.value() == 2)
        throw unsupported_players("no absorbing games exist with two players under this notion");
    return is_strongly_k_undetermined(store, g, n.value() - 1, n);
}

std::optional<GameId> absorbing_refute(GameStore& store, GameId g, const GamePool& pool,
                                       PlayerCount n) {
    for (GameId h : pool.games)
        if (!outcome(store, store.sum(g, h), n).empty()) return h;
    return std::nullopt;
}

GameId absorbing_from_undetermined(GameStore& store, GameId g, PlayerCount n) {
    if (n.value() == 2) throw unsupported_players("absorbing construction needs more than 2 players");
    const int depth = undetermined_depth(store, g, n);
    if (depth < 1) throw error("absorbing_from_undetermined: game is not undetermined");
    const int np = n.value();
    const int base = np / 2 + 2;  // floor(N/2 + 2)
    const int copies = depth >= np - 2 ? base : base * (np - 2);
    return store.n_copies(g, copies);
}

bool revertible(GameStore& store, GameId h, GameId g, PlayerCount n, const EqOracle& eq_in) {
    const EqOracle eq = eq_in ? eq_in : [](GameId a, GameId b) { return a == b; };
    auto h_opts = store.options(h);
    std::vector<bool> matched(h_opts.size(), false);
    for (GameId gp : store.options(g)) {
        bool found = false;
        for (std::size_t i = 0; i < h_opts.size(); ++i) {
            if (eq(h_opts[i], gp)) {
                matched[i] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    // unmatched options must come back to a copy of g in exactly N-1 moves
    auto reverts = [&](auto&& self, GameId x, int moves) -> bool {
        if (moves == 0) return eq(x, g);
        for (GameId c : store.options(x))
            if (self(self, c, moves - 1)) return true;
        return false;
    };
    for (std::size_t i = 0; i < h_opts.size(); ++i)
        if (!matched[i] && !reverts(reverts, h_opts[i], n.value() - 1)) return false;
    return true;
}

std::string law_name(Law law) {
    switch (law) {
        case Law::next_generation: return "next-generation";
        case Law::other_procreation: return "other-procreation";
        case Law::mirror: return "mirror";
        case Law::revert_inclusion: return "revert-inclusion";
    }
    throw error("unknown law");
}

std::vector<LawViolation> check_law(GameStore& store, Law law, const GamePool& pool, PlayerCount n,
                                    int k, int m) {
    std::vector<LawViolation> out;
    const auto note = [&](std::vector<GameId> tuple, std::string expected, std::string got) {
        out.push_back({law_name(law), std::move(tuple), std::move(expected), std::move(got)});
    };
    switch (law) {
        case Law::next_generation: {
            for (GameId h : pool.games) {
                if (outcome(store, h, n).contains_next()) continue;
                for (GameId g : pool.games) {
                    Outcome og = outcome(store, g, n);
                    Outcome osum = outcome(store, store.sum(g, h), n);
                    if (!osum.subset_of(og))
                        note({g, h}, "subset of " + og.str(), osum.str());
                }
            }
            break;
        }
        case Law::other_procreation: {
            if (k < 1 || m < 0) throw error("other_procreation needs k >= 1, m >= 0");
            if (n.value() <= k * m) throw error("other_procreation requires N > k*m");
            // all k-tuples with repetition, in pool order
            std::vector<std::size_t> idx(k, 0);
            const std::size_t sz = pool.games.size();
            if (sz == 0) break;
            while (true) {
                bool all_lack = true;
                for (int i = 0; i < k && all_lack; ++i)
                    if (outcome(store, pool.games[idx[i]], n).contains(m)) all_lack = false;
                if (all_lack) {
                    GameId total = store.zero();
                    std::vector<GameId> tuple;
                    for (int i = 0; i < k; ++i) {
                        tuple.push_back(pool.games[idx[i]]);
                        total = store.sum(total, pool.games[idx[i]]);
                    }
                    Outcome osum = outcome(store, total, n);
                    if (osum.contains(k * m))
                        note(std::move(tuple), "O_" + std::to_string(k * m) + " absent", osum.str());
                }
                // next nondecreasing index tuple
                int pos = k - 1;
                while (pos >= 0 && idx[pos] == sz - 1) --pos;
                if (pos < 0) break;
                const std::size_t v = idx[pos] + 1;
                for (int i = pos; i < k; ++i) idx[i] = v;
            }
            break;
        }
        case Law::mirror: {
            for (GameId g : pool.games) {
                Outcome o = outcome(store, store.n_copies(g, n.value()), n);
                if (o.contains_next()) note({g}, "N absent", o.str());
            }
            break;
        }
        case Law::revert_inclusion: {
            for (GameId h : pool.games)
                for (GameId g : pool.games) {
                    if (h == g || !revertible(store, h, g, n)) continue;
                    for (GameId x : pool.games) {
                        Outcome oh = outcome(store, store.sum(h, x), n);
                        Outcome og = outcome(store, store.sum(g, x), n);
                        if (!oh.subset_of(og))
                            note({h, g, x}, "subset of " + og.str(), oh.str());
                    }
                }
            break;
        }
    }
    return out;
}

std::optional<GameId> equal_refute(GameStore& store, GameId g, GameId h, const GamePool& pool,
                                   PlayerCount n) {
    for (GameId x : pool.games)
        if (outcome(store, store.sum(g, x), n) != outcome(store, store.sum(h, x), n)) return x;
    return std::nullopt;
}

std::vector<GameId> search_trebling(GameStore& store, const GamePool& pool) {
    const PlayerCount n3(3);
    std::vector<GameId> hits;
    for (GameId g : pool.games) {
        if (outcome(store, g, n3).mask() != 0b001u) continue;  // exactly {N}
        if (outcome(store, store.n_copies(g, 3), n3).contains_previous()) hits.push_back(g);
    }
    return hits;
}

}  // namespace nplay
