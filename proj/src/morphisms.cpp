#include "euclid/morphisms.hpp"

#include "euclid/errors.hpp"
#include "euclid/limits.hpp"

#include <algorithm>
#include <unordered_map>

namespace euclid {

bool is_bounded_morphism(const WorldMap& f, const Frame& source, const Frame& target) {
    std::vector<std::size_t> img(source.size());
    for (std::size_t s = 0; s < source.size(); ++s) {
        auto it = f.find(source.world(s));
        if (it == f.end() || !target.contains(it->second)) return false;
        img[s] = target.index(it->second);
    }
    for (std::size_t s = 0; s < source.size(); ++s) {
        std::vector<char> hit(target.size(), 0);
        for (std::size_t t : source.succ(s)) {
            if (!target.edge(img[s], img[t])) return false;
            hit[img[t]] = 1;
        }
        for (std::size_t u : target.succ(img[s])) {
            if (!hit[u]) return false;
        }
    }
    return true;
}

bool is_surjective(const WorldMap& f, const Frame& target) {
    WorldSet hit;
    for (const auto& [s, t] : f) hit.insert(t);
    return std::all_of(target.worlds().begin(), target.worlds().end(),
                       [&](const World& w) { return hit.count(w) != 0; });
}

namespace {

class BMSearch {
public:
    BMSearch(const Frame& src, const Frame& tgt, const Constraints& allowed)
        : src_(src), tgt_(tgt), budget_(limits().max_search_nodes, "bounded morphism search") {
        const std::size_t n = src.size();
        img_.assign(n, kUnset);
        hits_.assign(tgt.size(), 0);
        cand_.assign(n, {});
        for (std::size_t s = 0; s < n; ++s) {
            const WorldSet* only = nullptr;
            auto it = allowed.find(src.world(s));
            if (it != allowed.end()) only = &it->second;
            for (std::size_t t = 0; t < tgt.size(); ++t) {
                if (only && !only->count(tgt.world(t))) continue;
                if (compatible(s, t)) cand_[s].push_back(t);
            }
        }
        // Most constrained worlds first, ties by index.
        order_.resize(n);
        for (std::size_t i = 0; i < n; ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return cand_[a].size() < cand_[b].size(); });
    }

    std::optional<WorldMap> run() {
        if (src_.size() < tgt_.size()) return std::nullopt;
        if (!dfs(0)) return std::nullopt;
        WorldMap out;
        for (std::size_t s = 0; s < src_.size(); ++s) out[src_.world(s)] = tgt_.world(img_[s]);
        return out;
    }

private:
    static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

    // Necessary conditions: the successor image equals the target's
    // successor set, so dust goes to dust and out-degree cannot grow;
    // loops and incoming edges are preserved forward.
    bool compatible(std::size_t s, std::size_t t) const {
        if (src_.succ(s).empty() != tgt_.succ(t).empty()) return false;
        if (tgt_.succ(t).size() > src_.succ(s).size()) return false;
        if (src_.edge(s, s) && !tgt_.edge(t, t)) return false;
        if (!src_.pred(s).empty() && tgt_.pred(t).empty()) return false;
        return true;
    }

    // Back condition check for s once its image is fixed, given the
    // currently assigned successors.
    bool back_possible(std::size_t s) const {
        std::size_t t = img_[s];
        if (t == kUnset) return true;
        std::vector<char> hit(tgt_.size(), 0);
        std::size_t open = 0;
        for (std::size_t u : src_.succ(s)) {
            if (img_[u] == kUnset) ++open;
            else hit[img_[u]] = 1;
        }
        std::size_t missing = 0;
        for (std::size_t v : tgt_.succ(t)) missing += hit[v] ? 0 : 1;
        return missing <= open;
    }

    bool consistent(std::size_t s) const {
        std::size_t t = img_[s];
        for (std::size_t u : src_.succ(s)) {
            if (img_[u] != kUnset && !tgt_.edge(t, img_[u])) return false;
        }
        for (std::size_t u : src_.pred(s)) {
            if (img_[u] != kUnset && !tgt_.edge(img_[u], t)) return false;
        }
        if (!back_possible(s)) return false;
        for (std::size_t u : src_.pred(s)) {
            if (!back_possible(u)) return false;
        }
        return true;
    }

    bool dfs(std::size_t k) {
        budget_.tick();
        const std::size_t n = src_.size();
        if (k == n) return covered_ == tgt_.size();
        if (n - k < tgt_.size() - covered_) return false;
        std::size_t s = order_[k];
        for (std::size_t t : cand_[s]) {
            img_[s] = t;
            if (hits_[t]++ == 0) ++covered_;
            if (consistent(s) && dfs(k + 1)) return true;
            if (--hits_[t] == 0) --covered_;
            img_[s] = kUnset;
        }
        return false;
    }

    const Frame& src_;
    const Frame& tgt_;
    Budget budget_;
    std::vector<std::size_t> img_, hits_, order_;
    std::vector<std::vector<std::size_t>> cand_;
    std::size_t covered_ = 0;
};

class IsoSearch {
public:
    IsoSearch(const Frame& a, const Frame& b)
        : a_(a), b_(b), budget_(limits().max_search_nodes, "isomorphism search") {}

    std::optional<WorldMap> run() {
        if (a_.size() != b_.size() || a_.edge_count() != b_.edge_count()) return std::nullopt;
        img_.assign(a_.size(), kUnset);
        used_.assign(b_.size(), 0);
        if (!dfs(0)) return std::nullopt;
        WorldMap out;
        for (std::size_t s = 0; s < a_.size(); ++s) out[a_.world(s)] = b_.world(img_[s]);
        return out;
    }

private:
    static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

    bool same_signature(std::size_t s, std::size_t t) const {
        return a_.succ(s).size() == b_.succ(t).size() && a_.pred(s).size() == b_.pred(t).size() &&
               a_.edge(s, s) == b_.edge(t, t);
    }

    bool dfs(std::size_t s) {
        budget_.tick();
        if (s == a_.size()) return true;
        for (std::size_t t = 0; t < b_.size(); ++t) {
            if (used_[t] || !same_signature(s, t)) continue;
            bool ok = true;
            for (std::size_t u = 0; u < s && ok; ++u) {
                ok = a_.edge(s, u) == b_.edge(t, img_[u]) && a_.edge(u, s) == b_.edge(img_[u], t);
            }
            if (!ok) continue;
            img_[s] = t;
            used_[t] = 1;
            if (dfs(s + 1)) return true;
            used_[t] = 0;
            img_[s] = kUnset;
        }
        return false;
    }

    const Frame& a_;
    const Frame& b_;
    Budget budget_;
    std::vector<std::size_t> img_;
    std::vector<char> used_;
};

// Game types. The type of a tuple of length q is its atomic pattern; the
// type of a shorter tuple is the set of types of its one-point extensions.
// Two positions are won by the second player exactly when their types
// coincide. Types are interned in a table shared by both frames.
class TypeTable {
public:
    TypeTable(std::size_t q) : q_(q), budget_(limits().max_game_positions, "game positions") {}

    int type(const Frame& f, std::vector<std::size_t>& tuple) {
        budget_.tick();
        std::string key = pattern(f, tuple);
        if (tuple.size() < q_) {
            std::vector<int> children;
            children.reserve(f.size());
            for (std::size_t b = 0; b < f.size(); ++b) {
                tuple.push_back(b);
                children.push_back(type(f, tuple));
                tuple.pop_back();
            }
            std::sort(children.begin(), children.end());
            children.erase(std::unique(children.begin(), children.end()), children.end());
            key += "|";
            for (int c : children) key += std::to_string(c) + ",";
        }
        auto [it, fresh] = ids_.emplace(std::move(key), static_cast<int>(ids_.size()));
        return it->second;
    }

private:
    static std::string pattern(const Frame& f, const std::vector<std::size_t>& t) {
        std::string p = std::to_string(t.size()) + ":";
        for (std::size_t i = 0; i < t.size(); ++i) {
            for (std::size_t j = 0; j < t.size(); ++j) {
                char c = '0';
                if (t[i] == t[j]) c += 1;
                if (f.edge(t[i], t[j])) c += 2;
                p += c;
            }
        }
        return p;
    }

    std::size_t q_;
    Budget budget_;
    std::unordered_map<std::string, int> ids_;
};

}  // namespace

std::optional<WorldMap> find_surjective_bm(const Frame& source, const Frame& target, const Constraints& allowed) {
    return BMSearch(source, target, allowed).run();
}

std::optional<WorldMap> are_isomorphic(const Frame& a, const Frame& b) { return IsoSearch(a, b).run(); }

bool ef_second_player_wins(const Frame& a, const Frame& b, std::size_t q) {
    TypeTable table(q);
    std::vector<std::size_t> ta, tb;
    return table.type(a, ta) == table.type(b, tb);
}

bool q_equivalent(const Frame& a, const Frame& b, std::size_t q) { return ef_second_player_wins(a, b, q); }

GameReport ef_game_report(const Frame& a, const Frame& b, std::size_t q) {
    TypeTable table(q);
    GameReport out;
    std::vector<std::size_t> ta, tb;
    out.second_player_wins = table.type(a, ta) == table.type(b, tb);
    const Frame* frames[2] = {&a, &b};
    const char* names[2] = {"left", "right"};

    if (out.second_player_wins) {
        // A winning reply to every opening move.
        if (q == 0) return out;
        for (int side = 0; side < 2; ++side) {
            const Frame& mine = *frames[side];
            const Frame& other = *frames[1 - side];
            for (std::size_t w = 0; w < mine.size(); ++w) {
                std::vector<std::size_t> x{w};
                int want = table.type(mine, x);
                for (std::size_t r = 0; r < other.size(); ++r) {
                    std::vector<std::size_t> y{r};
                    if (table.type(other, y) == want) {
                        out.moves.push_back(std::string("first ") + names[side] + " " + mine.world(w) + ", second " +
                                            names[1 - side] + " " + other.world(r));
                        break;
                    }
                }
            }
        }
        return out;
    }

    // First player wins: follow one line of play in which the first player
    // keeps the types apart and the second player answers with the least world.
    for (std::size_t round = 0; round < q; ++round) {
        bool moved = false;
        for (int side = 0; side < 2 && !moved; ++side) {
            std::vector<std::size_t>& mine = side == 0 ? ta : tb;
            std::vector<std::size_t>& other = side == 0 ? tb : ta;
            const Frame& fm = *frames[side];
            const Frame& fo = *frames[1 - side];
            for (std::size_t w = 0; w < fm.size() && !moved; ++w) {
                mine.push_back(w);
                int t = table.type(fm, mine);
                bool all_differ = true;
                for (std::size_t r = 0; r < fo.size() && all_differ; ++r) {
                    other.push_back(r);
                    all_differ = table.type(fo, other) != t;
                    other.pop_back();
                }
                if (all_differ) {
                    other.push_back(0);
                    out.moves.push_back(std::string("first ") + names[side] + " " + fm.world(w) + ", second " +
                                        names[1 - side] + " " + fo.world(0));
                    moved = true;
                } else {
                    mine.pop_back();
                }
            }
        }
        if (!moved) break;
        // Stop as soon as the position is no longer a partial isomorphism.
        bool broken = false;
        for (std::size_t i = 0; i < ta.size() && !broken; ++i) {
            for (std::size_t j = 0; j < ta.size() && !broken; ++j) {
                broken = (ta[i] == ta[j]) != (tb[i] == tb[j]) || a.edge(ta[i], ta[j]) != b.edge(tb[i], tb[j]);
            }
        }
        if (broken) break;
    }
    return out;
}

}  // namespace euclid
