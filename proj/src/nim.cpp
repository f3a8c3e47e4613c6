#include "nplay/nim.hpp"

#include <algorithm>

namespace nplay {

namespace {

const PlayerCount kThree(3);

Outcome o3(const char* s) { return Outcome::parse(s, kThree); }

std::uint32_t complement_range(int from, int to, int np) {
    // complement of {O_from .. O_to} (empty when from > to)
    std::uint32_t full = (1u << np) - 1, drop = 0;
    for (int i = from; i <= to; ++i) drop |= 1u << i;
    return full & ~drop;
}

}  // namespace

NimPosition NimPosition::of(std::vector<int> hs) {
    std::erase(hs, 0);
    for (int h : hs)
        if (h < 0) throw error("negative heap size");
    std::sort(hs.begin(), hs.end());
    return NimPosition{std::move(hs)};
}

NimPosition NimPosition::plus(const NimPosition& other) const {
    std::vector<int> hs = heaps;
    hs.insert(hs.end(), other.heaps.begin(), other.heaps.end());
    return NimPosition::of(std::move(hs));
}

NimProfile profile(const NimPosition& p) {
    NimProfile pr;
    for (int h : p.heaps) {
        if (h == 1)
            ++pr.ones;
        else if (h == 2)
            ++pr.twos;
        else
            ++pr.bigs;
    }
    return pr;
}

Outcome nim_outcome_engine(GameStore& store, const NimPosition& p, PlayerCount n) {
    GameId g = store.zero();
    for (int h : p.heaps) g = store.sum(g, store.nim_heap(h));
    return outcome(store, g, n);
}

Outcome nim_outcome_closed3(const NimPosition& p) {
    const NimProfile pr = profile(p);
    const int k = pr.ones % 3;
    static const char* kTable[5][3] = {
        {"OP", "PN", "NO"},  // k ones
        {"N", "NO", "PN"},   // k ones + *2
        {"N", "NO", "N"},    // k ones + *m (m >= 3)
        {"O", "N", "NO"},    // k ones + *2 + *2
        {"-", "N", "NO"},    // k ones + *2 + *m (m >= 3)
    };
    int row = -1;
    if (pr.twos == 0 && pr.bigs == 0)
        row = 0;
    else if (pr.twos == 1 && pr.bigs == 0)
        row = 1;
    else if (pr.twos == 0 && pr.bigs == 1)
        row = 2;
    else if (pr.twos == 2 && pr.bigs == 0)
        row = 3;
    else if (pr.twos == 1 && pr.bigs == 1)
        row = 4;
    if (row < 0) return Outcome(0, kThree);
    return o3(kTable[row][k]);
}

Outcome one_heap_outcome(int i, PlayerCount n) {
    if (i < 0) throw error("negative heap size");
    const int np = n.value();
    if (i == 0) return Outcome(complement_range(0, 0, np), n);
    return Outcome(complement_range(1, std::min(i, np - 1), np), n);
}

Outcome two_heap_outcome(int i, int j, PlayerCount n) {
    if (n.value() == 2) throw unsupported_players("two_heap_outcome requires more than 2 players");
    if (i > j) throw error("two_heap_outcome requires i <= j");
    const int np = n.value();
    if (i == 0) return one_heap_outcome(j, n);
    if (i <= np - 2) return Outcome(complement_range(2, std::min(i + j, np - 1), np), n);
    if (i == np - 1 && j == np - 1) return Outcome(1u << 1, n);
    return Outcome(0, n);
}

bool check_n_periodicity(GameStore& store, GameId g, PlayerCount n, int prefix) {
    const int np = n.value();
    if (prefix < 2 * np) throw error("periodicity prefix must be at least 2N");
    const GameId star = store.nim_heap(1);
    const GameId n_ones = store.n_copies(star, np);
    // Hypothesis of the periodicity lemma, applied to every subposition: all
    // options are N-periodic (by this same induction) and o(H) = o(N ones + H).
    for (GameId h : store.subpositions(g))
        if (outcome(store, h, n) != outcome(store, store.sum(n_ones, h), n)) return false;
    GameId ones = store.zero();
    std::vector<Outcome> first;
    for (int k = 0; k <= prefix; ++k) {
        Outcome ok = outcome(store, store.sum(ones, g), n);
        if (k < np)
            first.push_back(ok);
        else if (!(ok == first[k % np]))
            return false;
        ones = store.sum(ones, star);
    }
    return true;
}

StabilityResult check_n_stability(GameStore& store, GameId g, PlayerCount n, int horizon) {
    const int np = n.value();
    if (horizon < np + 2) throw error("stability horizon must be at least N+2");
    const GameId hn = store.nim_heap(np), hn1 = store.nim_heap(np + 1);
    for (GameId h : store.subpositions(g))
        if (outcome(store, store.sum(h, hn1), n) != outcome(store, store.sum(h, hn), n))
            return {false, h};
    const Outcome stable = outcome(store, store.sum(g, hn), n);
    for (int m = np; m <= horizon; ++m)
        if (!(outcome(store, store.sum(g, store.nim_heap(m)), n) == stable)) return {false, g};
    return {true, std::nullopt};
}

std::string QuotientElement::name() const {
    if (absorbing) return "c^2";
    if (x == 0 && y == 0 && z == 0) return "1";
    std::string s;
    auto pow = [&](char v, int e) {
        if (e == 0) return;
        s += v;
        if (e > 1) s += "^" + std::to_string(e);
    };
    pow('a', x);
    pow('b', y);
    pow('c', z);
    return s;
}

NimPosition QuotientElement::representative() const {
    std::vector<int> hs;
    if (absorbing) return NimPosition::of({3, 3});
    for (int i = 0; i < x; ++i) hs.push_back(1);
    for (int i = 0; i < y; ++i) hs.push_back(2);
    for (int i = 0; i < z; ++i) hs.push_back(3);
    return NimPosition::of(std::move(hs));
}

QuotientElement phi(const NimPosition& p) {
    const NimProfile pr = profile(p);
    if (pr.bigs >= 2 || pr.twos + pr.bigs >= 3) return QuotientElement::abs();
    return QuotientElement{false, pr.ones % 3, pr.twos, pr.bigs};
}

QuotientElement quotient_mult(const QuotientElement& a, const QuotientElement& b) {
    if (a.absorbing || b.absorbing) return QuotientElement::abs();
    const int z = a.z + b.z, y = a.y + b.y;
    if (z >= 2 || y + z >= 3) return QuotientElement::abs();
    return QuotientElement{false, (a.x + b.x) % 3, y, z};
}

Outcome pi(const QuotientElement& q) { return nim_outcome_closed3(q.representative()); }

int NimQuotient::index_of(const QuotientElement& e) const {
    for (int i = 0; i < 16; ++i)
        if (elements[i] == e) return i;
    throw error("not a quotient normal form");
}

NimQuotient quotient_build() {
    // Normal forms in presentation order: powers of a, then by (y, z) blocks.
    std::array<QuotientElement, 16> elems{{
        {false, 0, 0, 0}, {false, 1, 0, 0}, {false, 2, 0, 0},  // 1, a, a^2
        {false, 0, 1, 0}, {false, 1, 1, 0}, {false, 2, 1, 0},  // b, ab, a^2b
        {false, 0, 0, 1}, {false, 1, 0, 1}, {false, 2, 0, 1},  // c, ac, a^2c
        {false, 0, 2, 0}, {false, 1, 2, 0}, {false, 2, 2, 0},  // b^2, ab^2, a^2b^2
        {false, 0, 1, 1}, {false, 1, 1, 1}, {false, 2, 1, 1},  // bc, abc, a^2bc
        QuotientElement::abs(),                                // c^2
    }};

    // Capped context space; outcomes saturate inside it, so it is enough both
    // to check the congruence and to separate classes.
    std::vector<NimPosition> contexts;
    for (int n1 = 0; n1 <= 5; ++n1)
        for (int n2 = 0; n2 <= 4; ++n2)
            for (int n3 = 0; n3 <= 3; ++n3) {
                std::vector<int> hs;
                for (int i = 0; i < n1; ++i) hs.push_back(1);
                for (int i = 0; i < n2; ++i) hs.push_back(2);
                for (int i = 0; i < n3; ++i) hs.push_back(3);
                contexts.push_back(NimPosition::of(std::move(hs)));
            }

    NimQuotient q;
    q.elements = elems;
    for (int i = 0; i < 16; ++i) {
        q.outcomes[i] = pi(elems[i]);
        for (int j = 0; j < 16; ++j) {
            const QuotientElement prod = quotient_mult(elems[i], elems[j]);
            q.mult[i][j] = q.index_of(prod);
            // Re-derive consistency: rep_i + rep_j must be indistinguishable
            // from prod's representative in every capped context.
            const NimPosition lhs = elems[i].representative().plus(elems[j].representative());
            const NimPosition rhs = prod.representative();
            for (const NimPosition& x : contexts)
                if (!(nim_outcome_closed3(lhs.plus(x)) == nim_outcome_closed3(rhs.plus(x))))
                    throw error("quotient congruence failure at " + elems[i].name() + " * " +
                                elems[j].name());
        }
    }
    // Distinctness: some context separates every pair of classes.
    for (int i = 0; i < 16; ++i)
        for (int j = i + 1; j < 16; ++j) {
            bool separated = false;
            for (const NimPosition& x : contexts) {
                if (!(nim_outcome_closed3(elems[i].representative().plus(x)) ==
                      nim_outcome_closed3(elems[j].representative().plus(x)))) {
                    separated = true;
                    break;
                }
            }
            if (!separated)
                throw error("quotient classes " + elems[i].name() + " and " + elems[j].name() +
                            " not separated within caps");
        }
    return q;
}

}  // namespace nplay
