#include "nplay/game_store.hpp"

#include <algorithm>

namespace nplay {

namespace {

std::uint64_t hash_ids(const std::vector<GameId>& kids) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (GameId g : kids) {
        std::uint32_t k = g.value();
        for (int b = 0; b < 4; ++b) {
            h ^= (k >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return h;
}

}  // namespace

GameStore::GameStore(std::size_t max_nodes) : max_nodes_(max_nodes) {
    begin_ = {0, 0};  // node 0: the empty game
    intern_.emplace(hash_ids({}), 0);
    heap_ids_.push_back(GameId(0));
    heap_size_ = {0};
    height_ = {0};
}

std::uint32_t GameStore::intern_sorted(const std::vector<GameId>& kids) {
    const std::uint64_t h = hash_ids(kids);
    auto [lo, hi] = intern_.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
        const std::uint32_t id = it->second;
        const auto b = begin_[id], e = begin_[id + 1];
        if (e - b == kids.size() &&
            std::equal(child_data_.begin() + b, child_data_.begin() + e, kids.begin()))
            return id;
    }
    if (size() >= max_nodes_)
        throw resource_error("game store node cap exceeded (" + std::to_string(max_nodes_) + ")");
    const std::uint32_t id = static_cast<std::uint32_t>(size());
    child_data_.insert(child_data_.end(), kids.begin(), kids.end());
    begin_.push_back(static_cast<std::uint32_t>(child_data_.size()));
    heap_size_.push_back(-2);
    height_.push_back(-1);
    intern_.emplace(h, id);
    return id;
}

GameId GameStore::intern(std::vector<GameId> options) {
    for (GameId g : options) check(g);
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());
    return GameId(intern_sorted(options));
}

GameId GameStore::nim_heap(int n) {
    if (n < 0) throw error("nim_heap: negative size");
    while (static_cast<int>(heap_ids_.size()) <= n) {
        std::vector<GameId> opts(heap_ids_.begin(), heap_ids_.end());
        GameId id = intern(std::move(opts));
        heap_ids_.push_back(id);
        heap_size_[id.value()] = static_cast<std::int32_t>(heap_ids_.size()) - 1;
    }
    return heap_ids_[n];
}

GameId GameStore::sum(GameId g, GameId h) {
    check(g);
    check(h);
    if (g == zero()) return h;
    if (h == zero()) return g;
    std::uint32_t a = g.value(), b = h.value();
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (auto it = sum_memo_.find(key); it != sum_memo_.end()) return GameId(it->second);
    // copy the spans: recursive sums grow the child arena underneath them
    const auto ga = options(GameId(a));
    const auto gb = options(GameId(b));
    std::vector<GameId> akids(ga.begin(), ga.end()), bkids(gb.begin(), gb.end());
    std::vector<GameId> opts;
    for (GameId gp : akids) opts.push_back(sum(gp, GameId(b)));
    for (GameId hp : bkids) opts.push_back(sum(GameId(a), hp));
    GameId r = intern(std::move(opts));
    sum_memo_.emplace(key, r.value());
    return r;
}

GameId GameStore::n_copies(GameId g, int k) {
    if (k < 0) throw error("n_copies: negative count");
    GameId acc = zero();
    for (int i = 0; i < k; ++i) acc = sum(acc, g);
    return acc;
}

std::vector<GameId> GameStore::subpositions(GameId g) const {
    check(g);
    std::vector<bool> seen(g.value() + 1, false);
    std::vector<GameId> stack{g}, out;
    seen[g.value()] = true;
    while (!stack.empty()) {
        GameId cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        for (GameId c : options(cur)) {
            if (!seen[c.value()]) {
                seen[c.value()] = true;
                stack.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int GameStore::heap_size(GameId g) {
    check(g);
    if (heap_size_[g.value()] != -2) return heap_size_[g.value()];
    auto opts = options(g);
    // *n has exactly the smaller heaps as options; sorted child lists keep
    // them in size order because a heap's id exceeds its sub-heaps' ids.
    std::int32_t n = static_cast<std::int32_t>(opts.size());
    std::int32_t result = n;
    for (std::int32_t i = 0; i < n; ++i) {
        if (heap_size(opts[i]) != i) {
            result = -1;
            break;
        }
    }
    heap_size_[g.value()] = result;
    return result;
}

int GameStore::height(GameId g) {
    check(g);
    std::vector<GameId> stack{g};
    while (!stack.empty()) {
        GameId cur = stack.back();
        if (height_[cur.value()] >= 0) {
            stack.pop_back();
            continue;
        }
        bool ready = true;
        int h = 0;
        for (GameId c : options(cur)) {
            if (height_[c.value()] < 0) {
                stack.push_back(c);
                ready = false;
            } else {
                h = std::max(h, height_[c.value()] + 1);
            }
        }
        if (ready) {
            height_[cur.value()] = h;
            stack.pop_back();
        }
    }
    return height_[g.value()];
}

std::vector<std::uint32_t>& GameStore::outcome_slots(int players) {
    auto& v = outcome_memo_[players];
    if (v.size() < size()) v.resize(size(), 0xFFFFFFFFu);
    return v;
}

}  // namespace nplay
