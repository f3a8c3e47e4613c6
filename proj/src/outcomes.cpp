#include "nplay/outcomes.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace nplay {

std::string Outcome::str() const {
    if (mask_ == 0) return "-";
    std::string s;
    for (int i = 0; i < players_; ++i) {
        if (!contains(i)) continue;
        if (i == 0)
            s += 'N';
        else if (i == players_ - 1)
            s += 'P';
        else if (players_ == 3)
            s += 'O';
        else
            s += "O" + std::to_string(i);
    }
    return s;
}

Outcome Outcome::parse(std::string_view text, PlayerCount n) {
    const int np = n.value();
    if (text == "-") return Outcome(0, n);
    std::uint32_t mask = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == 'N') {
            mask |= 1u;
            ++i;
        } else if (c == 'P') {
            mask |= 1u << (np - 1);
            ++i;
        } else if (c == 'O') {
            ++i;
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            int seat;
            if (start == i) {
                if (np != 3) throw parse_error("bare 'O' only valid with 3 players", start);
                seat = 1;
            } else {
                seat = std::stoi(std::string(text.substr(start, i - start)));
            }
            if (seat < 1 || seat > np - 1) throw parse_error("seat out of range", start);
            mask |= 1u << seat;
        } else {
            throw parse_error("unknown outcome token", i);
        }
    }
    return Outcome(mask, n);
}

Outcome outcome(GameStore& store, GameId g, PlayerCount n) {
    store.check(g);
    const int np = n.value();
    const std::uint32_t full = (np == 32) ? 0xFFFFFFFFu : ((1u << np) - 1);
    const std::uint32_t unset = 0xFFFFFFFFu;
    {
        auto& slots = store.outcome_slots(np);
        if (slots[g.value()] != unset) return Outcome(slots[g.value()], n);
    }
    // Children before parents; explicit stack since sums make tall DAGs.
    std::vector<GameId> stack{g};
    while (!stack.empty()) {
        GameId cur = stack.back();
        auto& slots = store.outcome_slots(np);
        if (slots[cur.value()] != unset) {
            stack.pop_back();
            continue;
        }
        bool ready = true;
        std::uint32_t all = full, any = 0;
        for (GameId c : store.options(cur)) {
            const std::uint32_t m = slots[c.value()];
            if (m == unset) {
                stack.push_back(c);
                ready = false;
            } else {
                all &= m;
                any |= m;
            }
        }
        if (ready) {
            const std::uint32_t next_bit = (any >> (np - 1)) & 1u;
            slots[cur.value()] = (((all << 1) & full) & ~1u) | next_bit;
            stack.pop_back();
        }
    }
    return Outcome(store.outcome_slots(np)[g.value()], n);
}

bool wins_moving_ith(GameStore& store, GameId g, int i, PlayerCount n) {
    if (i < 1 || i > n.value()) throw error("move order out of range");
    return outcome(store, g, n).contains(i - 1);
}

GameId outcome_witness(GameStore& store, const Outcome& target) {
    const int np = target.players();
    PlayerCount n(np);
    const std::uint32_t full = (1u << np) - 1;
    if (target.mask() == full) throw error("outcome_witness: target must be a proper subset");
    if (np == 2) {
        if (target.mask() == 0b01u) return store.nim_heap(1);  // {N}
        if (target.mask() == 0b10u) return store.zero();       // {P}
        throw unsupported_players("outcome_witness: only N and P are reachable with 2 players");
    }
    if (target.empty()) {
        std::vector<GameId> h_opts;
        for (int m = 0; m <= np - 2; ++m) h_opts.push_back(store.n_copies(store.nim_heap(1), m));
        GameId h = store.intern(std::move(h_opts));
        return store.intern({h, store.wrap(h)});
    }
    // Rotate until Next is in the target, cycling back with wraps afterwards.
    std::uint32_t mask = target.mask();
    int wraps = 0;
    while (!(mask & 1u)) {
        mask = (mask >> 1) | ((mask & 1u) << (np - 1));
        ++wraps;
    }
    std::vector<GameId> opts;
    for (int i = 1; i <= np - 1; ++i)
        if (!((mask >> i) & 1u)) opts.push_back(store.n_copies(store.nim_heap(1), i - 1));
    GameId w = store.intern(std::move(opts));
    for (int i = 0; i < wraps; ++i) w = store.wrap(w);
    return w;
}

}  // namespace nplay
