#include "nplay/partizan.hpp"

#include <algorithm>
#include <map>

namespace nplay {

namespace {

std::uint64_t hash_slots(const std::vector<std::vector<PGameId>>& slots) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a with slot separators
    auto mix = [&h](std::uint32_t k) {
        for (int b = 0; b < 4; ++b) {
            h ^= (k >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    for (const auto& slot : slots) {
        mix(0xFFFFFFFFu);
        for (PGameId g : slot) mix(g.value());
    }
    return h;
}

}  // namespace

PartizanStore::PartizanStore(GameStore& impartial, PlayerCount n, std::size_t max_nodes)
    : impartial_(impartial), players_(n), max_nodes_(max_nodes) {
    nodes_.push_back(std::vector<std::vector<PGameId>>(seats()));
    intern_.emplace(hash_slots(nodes_[0]), 0);
    conj_memo_.push_back(0);  // 0 is self-conjugate
    embedded_memo_.push_back(0);
    height_.push_back(0);
}

PGameId PartizanStore::intern(std::vector<std::vector<PGameId>> slots) {
    if (static_cast<int>(slots.size()) != seats())
        throw error("partizan game needs exactly one option set per player");
    for (auto& s : slots) {
        for (PGameId g : s) check(g);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    const std::uint64_t h = hash_slots(slots);
    auto [lo, hi] = intern_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
        if (nodes_[it->second] == slots) return PGameId(it->second);
    if (nodes_.size() >= max_nodes_)
        throw resource_error("partizan store node cap exceeded (" + std::to_string(max_nodes_) + ")");
    const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(std::move(slots));
    intern_.emplace(h, id);
    conj_memo_.push_back(-1);
    embedded_memo_.push_back(-2);
    height_.push_back(-1);
    return PGameId(id);
}

std::span<const PGameId> PartizanStore::slot(PGameId g, int seat) const {
    check(g);
    if (seat < 0 || seat >= seats()) throw error("seat out of range");
    return nodes_[g.value()][seat];
}

PGameId PartizanStore::sum(PGameId g, PGameId h) {
    check(g);
    check(h);
    if (g == zero()) return h;
    if (h == zero()) return g;
    std::uint32_t a = g.value(), b = h.value();
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (auto it = sum_memo_.find(key); it != sum_memo_.end()) return PGameId(it->second);
    std::vector<std::vector<PGameId>> slots(seats());
    for (int i = 0; i < seats(); ++i) {
        const std::vector<PGameId> ga = nodes_[a][i], gb = nodes_[b][i];  // copies: arena grows
        for (PGameId x : ga) slots[i].push_back(sum(x, PGameId(b)));
        for (PGameId x : gb) slots[i].push_back(sum(PGameId(a), x));
    }
    PGameId r = intern(std::move(slots));
    sum_memo_.emplace(key, r.value());
    return r;
}

PGameId PartizanStore::n_copies(PGameId g, int k) {
    if (k < 0) throw error("n_copies: negative count");
    PGameId acc = zero();
    for (int i = 0; i < k; ++i) acc = sum(acc, g);
    return acc;
}

PGameId PartizanStore::conjugate(PGameId g) {
    check(g);
    if (conj_memo_[g.value()] >= 0) return PGameId(static_cast<std::uint32_t>(conj_memo_[g.value()]));
    std::vector<std::vector<PGameId>> slots(seats());
    for (int i = 0; i < seats(); ++i) {
        const std::vector<PGameId> prev = nodes_[g.value()][(i + seats() - 1) % seats()];
        for (PGameId x : prev) slots[i].push_back(conjugate(x));
    }
    PGameId r = intern(std::move(slots));
    conj_memo_[g.value()] = r.value();
    return r;
}

PGameId PartizanStore::kth_conjugate(PGameId g, int k) {
    k %= seats();
    if (k < 0) k += seats();
    for (int i = 0; i < k; ++i) g = conjugate(g);
    return g;
}

PGameId PartizanStore::conj_sum(PGameId g) {
    PGameId acc = zero(), cur = g;
    for (int i = 1; i <= seats() - 1; ++i) {
        cur = conjugate(cur);
        acc = sum(acc, cur);
    }
    return acc;
}

PGameId PartizanStore::integer(int k, int seat) {
    if (k < 0) throw error("integer: negative");
    if (seat < 0 || seat >= seats()) throw error("seat out of range");
    PGameId prev = zero();
    std::vector<PGameId> opts;
    for (int j = 1; j <= k; ++j) {
        opts.push_back(prev);
        std::vector<std::vector<PGameId>> slots(seats());
        slots[seat] = opts;
        prev = intern(std::move(slots));
        opts = std::vector<PGameId>(this->slot(prev, seat).begin(), this->slot(prev, seat).end());
    }
    return prev;
}

PGameId PartizanStore::embed(GameId g) {
    impartial_.check(g);
    if (auto it = embed_memo_.find(g.value()); it != embed_memo_.end()) return PGameId(it->second);
    auto opts = impartial_.options(g);
    std::vector<PGameId> row;
    for (GameId c : std::vector<GameId>(opts.begin(), opts.end())) row.push_back(embed(c));
    PGameId r = intern(std::vector<std::vector<PGameId>>(seats(), row));
    embed_memo_.emplace(g.value(), r.value());
    embedded_memo_[r.value()] = static_cast<std::int64_t>(g.value());
    return r;
}

std::optional<GameId> PartizanStore::embedded(PGameId g) {
    check(g);
    std::int64_t& slot0 = embedded_memo_[g.value()];
    if (slot0 == -1) return std::nullopt;
    if (slot0 >= 0) return GameId(static_cast<std::uint32_t>(slot0));
    const auto& slots = nodes_[g.value()];
    for (int i = 1; i < seats(); ++i)
        if (slots[i] != slots[0]) {
            embedded_memo_[g.value()] = -1;
            return std::nullopt;
        }
    std::vector<GameId> opts;
    for (PGameId c : std::vector<PGameId>(slots[0])) {
        auto sub = embedded(c);
        if (!sub) {
            embedded_memo_[g.value()] = -1;
            return std::nullopt;
        }
        opts.push_back(*sub);
    }
    GameId r = impartial_.intern(std::move(opts));
    embedded_memo_[g.value()] = static_cast<std::int64_t>(r.value());
    embed_memo_.emplace(r.value(), g.value());
    return r;
}

GameId PartizanStore::restriction(PGameId g, int first) {
    check(g);
    if (first < 0 || first >= seats()) throw error("seat out of range");
    const std::uint64_t key = static_cast<std::uint64_t>(g.value()) * seats() + first;
    if (auto it = rest_memo_.find(key); it != rest_memo_.end()) return GameId(it->second);
    const std::vector<PGameId> opts = nodes_[g.value()][first];
    std::vector<GameId> kids;
    for (PGameId c : opts) kids.push_back(restriction(c, (first + 1) % seats()));
    GameId r = impartial_.intern(std::move(kids));
    rest_memo_.emplace(key, r.value());
    return r;
}

int PartizanStore::tree_height(PGameId g) {
    check(g);
    if (height_[g.value()] >= 0) return height_[g.value()];
    int h = 0;
    for (int i = 0; i < seats(); ++i)
        for (PGameId c : std::vector<PGameId>(nodes_[g.value()][i]))
            h = std::max(h, tree_height(c) + 1);
    height_[g.value()] = h;
    return h;
}

PartizanOutcome p_outcome(PartizanStore& store, PGameId g) {
    PartizanOutcome out;
    for (int i = 0; i < store.seats(); ++i)
        out.by_first.push_back(outcome(store.impartial(), store.restriction(g, i), store.players()));
    return out;
}

bool p_wins(PartizanStore& store, PGameId g, int seat, int order) {
    const int np = store.seats();
    if (order < 1 || order > np) throw error("move order out of range");
    const int first = ((seat - order + 1) % np + np) % np;
    return outcome(store.impartial(), store.restriction(g, first), store.players())
        .contains(order - 1);
}

Outcome integer_sum_outcome(std::span<const int> coeffs, int first, PlayerCount n) {
    const int np = n.value();
    if (static_cast<int>(coeffs.size()) != np) throw error("need one coefficient per player");
    if (first < 0 || first >= np) throw error("seat out of range");
    int mn = coeffs[0];
    for (int c : coeffs) mn = std::min(mn, c);
    int j = 0;
    while (coeffs[(first + j) % np] != mn) ++j;
    const std::uint32_t full = (1u << np) - 1;
    return Outcome(full & ~(1u << j), n);
}

bool zero_leq(PartizanStore& store, PGameId g, int seat) {
    if (store.seats() == 2)
        throw unsupported_players("the nonnegativity rule needs more than 2 players");
    store.check(g);
    for (int i = 0; i < store.seats(); ++i)
        if (i != seat && !store.slot(g, i).empty()) return false;
    return true;
}

bool leq_zero(PartizanStore& store, PGameId g, int seat) {
    return !outcome(store.impartial(), store.restriction(g, seat), store.players()).contains_next();
}

namespace {

struct LeqKey {
    std::uint32_t g, h;
    int seat;
    auto operator<=>(const LeqKey&) const = default;
};

bool leq_sufficient_impl(PartizanStore& s, PGameId g, PGameId h, int seat,
                         std::map<LeqKey, bool>& memo) {
    if (g == h) return true;  // structural identity
    const LeqKey key{g.value(), h.value(), seat};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool result;
    if (h == s.zero()) {
        result = leq_zero(s, g, seat);  // exact
    } else if (g == s.zero() && s.seats() > 2) {
        result = zero_leq(s, h, seat);  // exact
    } else {
        result = true;
        // every g-option for `seat` needs a dominating h-option
        for (PGameId a : s.slot(g, seat)) {
            bool found = false;
            for (PGameId b : s.slot(h, seat))
                if (leq_sufficient_impl(s, a, b, seat, memo)) {
                    found = true;
                    break;
                }
            if (!found) {
                result = false;
                break;
            }
        }
        // every opponent h-option needs a g-option it dominates
        for (int i = 0; result && i < s.seats(); ++i) {
            if (i == seat) continue;
            for (PGameId b : s.slot(h, i)) {
                bool found = false;
                for (PGameId a : s.slot(g, i))
                    if (leq_sufficient_impl(s, a, b, seat, memo)) {
                        found = true;
                        break;
                    }
                if (!found) {
                    result = false;
                    break;
                }
            }
        }
    }
    memo.emplace(key, result);
    return result;
}

}  // namespace

bool leq_sufficient(PartizanStore& store, PGameId g, PGameId h, int seat) {
    std::map<LeqKey, bool> memo;
    return leq_sufficient_impl(store, g, h, seat, memo);
}

std::vector<PGameId> witness_family(PartizanStore& store, PGameId g, PGameId h, int seat) {
    const int np = store.seats();
    const int depth = std::max(store.tree_height(g), store.tree_height(h));
    std::vector<PGameId> fam{store.zero()};
    auto add = [&](PGameId x) { fam.push_back(x); };

    // built for Left, then rotated onto `seat` with conjugates
    std::vector<PGameId> left_family;
    const PGameId negs_one = store.conj_sum(store.one(0));  // (1_L)^-
    for (int m = 1; m <= depth + 1; ++m) {
        const PGameId y = store.n_copies(negs_one, m);
        left_family.push_back(y);
        if (np == 2) continue;  // the zero-rule gadgets need a middle seat
        // nonnegativity refutation against a center mover: X^{C_c} = 0, X^{C_c+1} = Y
        for (int c = 1; c <= np - 2; ++c) {
            std::vector<std::vector<PGameId>> slots(np);
            slots[c] = {store.zero()};
            slots[c + 1] = {y};
            left_family.push_back(store.intern(std::move(slots)));
        }
        // nonnegativity refutation against a Right mover: X^{C_1} = Y, X^R = 1_L
        std::vector<std::vector<PGameId>> slots(np);
        slots[1] = {y};
        slots[np - 1] = {store.one(0)};
        left_family.push_back(store.intern(std::move(slots)));
        // one-option integer-sum witnesses for the {k_{C_i}} chains
        for (int i = 1; i <= np - 1; ++i) {
            const int mover = i == 1 ? 2 : 1;
            PGameId target = store.sum(store.ones(m - 1, 0), store.ones(m - 1, mover == 2 ? 2 : 1));
            for (int j = mover == 2 ? 3 : 2; j <= np - 1; ++j)
                if (j != i) target = store.sum(target, store.ones(m, j));
            std::vector<std::vector<PGameId>> xs(np);
            xs[mover] = {target};
            left_family.push_back(store.intern(std::move(xs)));
        }
    }
    // conjugate sums of the one-move games and of the operands
    for (int q = 0; q < np; ++q) left_family.push_back(store.conj_sum(store.one(q)));
    for (PGameId x : left_family) add(store.kth_conjugate(x, seat));
    add(store.conj_sum(g));
    add(store.conj_sum(h));
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    return fam;
}

std::optional<std::pair<PGameId, int>> leq_refute(PartizanStore& store, PGameId g, PGameId h,
                                                  int seat, std::span<const PGameId> pool) {
    for (PGameId x : pool) {
        const PGameId gx = store.sum(g, x), hx = store.sum(h, x);
        for (int order = 1; order <= store.seats(); ++order)
            if (p_wins(store, gx, seat, order) && !p_wins(store, hx, seat, order))
                return std::make_pair(x, order);
    }
    return std::nullopt;
}

std::string CompareVerdict::str() const {
    switch (kind) {
        case Kind::proven: return "PROVEN(" + rule + ")";
        case Kind::refuted:
            return "REFUTED(witness id " + std::to_string(witness.value()) + ", moving " +
                   std::to_string(order) + ")";
        case Kind::unknown: return "UNKNOWN(" + budget + ")";
    }
    return "";
}

CompareVerdict compare(PartizanStore& store, PGameId g, PGameId h, int seat,
                       std::span<const PGameId> pool) {
    if (g == h) return {CompareVerdict::Kind::proven, "identity"};
    auto refute_with = [&](std::span<const PGameId> candidates) -> std::optional<CompareVerdict> {
        if (auto r = leq_refute(store, g, h, seat, candidates))
            return CompareVerdict{CompareVerdict::Kind::refuted, "", r->first, r->second};
        return std::nullopt;
    };
    const std::vector<PGameId> fam = witness_family(store, g, h, seat);
    if (h == store.zero()) {
        if (leq_zero(store, g, seat)) return {CompareVerdict::Kind::proven, "nonpositivity-rule"};
        // exact rule says no; the empty context witnesses it
        if (auto r = refute_with(fam)) return *r;
        if (auto r = refute_with(pool)) return *r;
        return {CompareVerdict::Kind::unknown, "", {}, 0, "exact rule refuted but no witness found"};
    }
    if (g == store.zero() && store.seats() > 2) {
        if (zero_leq(store, h, seat)) return {CompareVerdict::Kind::proven, "nonnegativity-rule"};
        if (auto r = refute_with(fam)) return *r;
        if (auto r = refute_with(pool)) return *r;
        return {CompareVerdict::Kind::unknown, "", {}, 0, "exact rule refuted but no witness found"};
    }
    if (leq_sufficient(store, g, h, seat))
        return {CompareVerdict::Kind::proven, "inequality-test"};
    if (auto r = refute_with(fam)) return *r;
    if (auto r = refute_with(pool)) return *r;
    return {CompareVerdict::Kind::unknown, "", {}, 0,
            "witness family and pool of " + std::to_string(pool.size()) + " exhausted"};
}

PGameId delete_dominated(PartizanStore& store, PGameId g, int seat, int keep_index, int drop_index,
                         std::span<const PGameId> pool) {
    auto opts = store.slot(g, seat);
    if (keep_index < 0 || drop_index < 0 || keep_index >= static_cast<int>(opts.size()) ||
        drop_index >= static_cast<int>(opts.size()) || keep_index == drop_index)
        throw error("delete_dominated: bad option indices");
    const PGameId keep = opts[keep_index], drop = opts[drop_index];
    if (!compare(store, drop, keep, seat, pool).proven())
        throw error("delete_dominated: dominance not proven");
    std::vector<std::vector<PGameId>> slots;
    for (int i = 0; i < store.seats(); ++i) {
        auto s = store.slot(g, i);
        slots.emplace_back(s.begin(), s.end());
    }
    std::erase(slots[seat], drop);
    return store.intern(std::move(slots));
}

PGameId bypass_reversible(PartizanStore& store, PGameId g, int seat, std::span<const PGameId> chain,
                          std::span<const PGameId> pool) {
    const int np = store.seats();
    if (static_cast<int>(chain.size()) != np)
        throw error("bypass_reversible: chain must have one move per player");
    PGameId cur = g;
    for (int t = 0; t < np; ++t) {
        const int mover = (seat + t) % np;
        auto opts = store.slot(cur, mover);
        if (std::find(opts.begin(), opts.end(), chain[t]) == opts.end())
            throw error("bypass_reversible: chain step " + std::to_string(t) +
                        " is not an option of the previous game");
        cur = chain[t];
    }
    if (!compare(store, chain.back(), g, seat, pool).proven())
        throw error("bypass_reversible: follower <= game not proven");
    std::vector<std::vector<PGameId>> slots;
    for (int i = 0; i < np; ++i) {
        auto s = store.slot(g, i);
        slots.emplace_back(s.begin(), s.end());
    }
    std::erase(slots[seat], chain[0]);
    auto replacement = store.slot(chain.back(), seat);
    slots[seat].insert(slots[seat].end(), replacement.begin(), replacement.end());
    return store.intern(std::move(slots));
}

PGameId p_outcome_witness(PartizanStore& store, const PartizanOutcome& target) {
    const int np = store.seats();
    if (np == 2) throw unsupported_players("partizan outcome witnesses need more than 2 players");
    if (static_cast<int>(target.by_first.size()) != np)
        throw error("need one outcome component per player");
    std::vector<std::vector<PGameId>> slots(np);
    for (int i = 0; i < np; ++i) {
        if (target.by_first[i].players() != np)
            throw error("outcome component has the wrong player count");
        GameId w = outcome_witness(store.impartial(), target.by_first[i]);
        for (int k = 0; k < np - 1; ++k) w = store.impartial().wrap(w);
        slots[i] = {store.embed(w)};
    }
    return store.intern(std::move(slots));
}

std::vector<PGameId> default_partizan_pool(PartizanStore& store) {
    const int np = store.seats();
    std::vector<PGameId> pool;
    const PGameId star = store.embed(store.impartial().nim_heap(1));
    // per-slot subsets of {0, one(slot), *}; full product up to 4 players
    const int per_slot = 8;
    std::uint64_t total = 1;
    for (int i = 0; i < np; ++i) total *= per_slot;
    if (np <= 4) {
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            std::vector<std::vector<PGameId>> slots(np);
            for (int i = 0; i < np; ++i) {
                const int mask = static_cast<int>(c % per_slot);
                c /= per_slot;
                if (mask & 1) slots[i].push_back(store.zero());
                if (mask & 2) slots[i].push_back(store.one(i));
                if (mask & 4) slots[i].push_back(star);
            }
            pool.push_back(store.intern(std::move(slots)));
        }
    } else {
        // one option or none per slot keeps wide games desk sized
        std::uint64_t caps = 1;
        for (int i = 0; i < np; ++i) caps *= 4;
        for (std::uint64_t code = 0; code < caps; ++code) {
            std::uint64_t c = code;
            std::vector<std::vector<PGameId>> slots(np);
            for (int i = 0; i < np; ++i) {
                const int pickd = static_cast<int>(c % 4);
                c /= 4;
                if (pickd == 1) slots[i].push_back(store.zero());
                if (pickd == 2) slots[i].push_back(store.one(i));
                if (pickd == 3) slots[i].push_back(star);
            }
            pool.push_back(store.intern(std::move(slots)));
        }
    }
    for (int q = 0; q < np; ++q)
        for (int k = 1; k <= 3; ++k) {
            pool.push_back(store.integer(k, q));
            pool.push_back(store.ones(k, q));
            pool.push_back(store.conj_sum(store.integer(k, q)));
            // {k_{C_q} | ... | } style one-option games for every owner seat
            for (int owner = 0; owner < np; ++owner) {
                std::vector<std::vector<PGameId>> slots(np);
                slots[owner] = {store.integer(k, q)};
                pool.push_back(store.intern(std::move(slots)));
            }
        }
    pool.push_back(store.embed(store.impartial().nim_heap(2)));
    pool.push_back(store.embed(store.impartial().wrap(store.impartial().nim_heap(1))));
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    return pool;
}

std::optional<PGameId> p_equal_refute(PartizanStore& store, PGameId g, PGameId h,
                                      std::span<const PGameId> pool) {
    for (PGameId x : pool)
        if (!(p_outcome(store, store.sum(g, x)) == p_outcome(store, store.sum(h, x)))) return x;
    return std::nullopt;
}

}  // namespace nplay
