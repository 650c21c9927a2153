#include "euclid/frames.hpp"

#include "euclid/errors.hpp"
#include "euclid/limits.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace euclid {

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < a.size() && j < b.size()) {
        if (digit(a[i]) && digit(b[j])) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && digit(a[i2])) ++i2;
            while (j2 < b.size() && digit(b[j2])) ++j2;
            std::size_t ia = i, jb = j;
            while (ia + 1 < i2 && a[ia] == '0') ++ia;
            while (jb + 1 < j2 && b[jb] == '0') ++jb;
            std::size_t la = i2 - ia, lb = j2 - jb;
            if (la != lb) return la < lb;
            int c = a.compare(ia, la, b, jb, lb);
            if (c != 0) return c < 0;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((i < a.size()) != (j < b.size())) return i >= a.size();
    return a < b;  // only differs on leading zeros
}

// ---------------------------------------------------------------------------
// Frame

Frame::Frame(std::vector<World> worlds, const std::vector<std::pair<World, World>>& edges)
    : worlds_(std::move(worlds)) {
    if (worlds_.empty()) throw MalformedInput("a frame needs at least one world");
    std::sort(worlds_.begin(), worlds_.end(), natural_less);
    for (std::size_t i = 0; i < worlds_.size(); ++i) {
        if (!index_.emplace(worlds_[i], i).second) throw MalformedInput("duplicate world: " + worlds_[i]);
    }
    std::size_t n = worlds_.size();
    adj_.assign(n * n, 0);
    for (const auto& [a, b] : edges) adj_[index(a) * n + index(b)] = 1;
    succ_.assign(n, {});
    pred_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (adj_[i * n + j]) {
                succ_[i].push_back(j);
                pred_[j].push_back(i);
            }
        }
    }
}

std::size_t Frame::index(const World& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) throw WorldNotFound(w);
    return it->second;
}

std::size_t Frame::edge_count() const {
    return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1));
}

std::vector<std::pair<World, World>> Frame::edges() const {
    std::vector<std::pair<World, World>> out;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j : succ_[i]) out.emplace_back(worlds_[i], worlds_[j]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Galaxy

const WorldSet& Galaxy::image(const World& s) const {
    auto it = rho.find(s);
    if (it == rho.end()) throw WorldNotFound(s);
    return it->second;
}

void Galaxy::validate() const {
    if (upper.empty() && lower.empty()) throw MalformedInput("galaxy has no worlds");
    for (const auto& a : upper) {
        if (lower.count(a)) throw MalformedInput("world in both parts: " + a);
        auto it = rho.find(a);
        if (it == rho.end()) throw MalformedInput("rho undefined at " + a);
        for (const auto& b : it->second) {
            if (!lower.count(b)) throw MalformedInput("rho(" + a + ") leaves the lower part");
        }
    }
    if (rho.size() != upper.size()) throw MalformedInput("rho defined outside the upper part");
}

// ---------------------------------------------------------------------------
// Taxonomy

bool is_euclidean(const Frame& f) {
    for (std::size_t s = 0; s < f.size(); ++s) {
        for (std::size_t t : f.succ(s)) {
            for (std::size_t u : f.succ(s)) {
                if (!f.edge(t, u)) return false;
            }
        }
    }
    return true;
}

Partition partition(const Frame& f) {
    if (!is_euclidean(f)) throw NotEuclidean();
    Partition p;
    for (std::size_t w = 0; w < f.size(); ++w) {
        if (!f.pred(w).empty()) p.kernel.insert(f.world(w));
        else if (f.succ(w).empty()) p.dust.insert(f.world(w));
        else p.root.insert(f.world(w));
    }
    return p;
}

Frame galaxy_to_frame(const Galaxy& g) {
    g.validate();
    std::vector<World> worlds(g.upper.begin(), g.upper.end());
    worlds.insert(worlds.end(), g.lower.begin(), g.lower.end());
    std::vector<std::pair<World, World>> edges;
    for (const auto& [s, img] : g.rho) {
        for (const auto& t : img) edges.emplace_back(s, t);
    }
    for (const auto& a : g.lower) {
        for (const auto& b : g.lower) edges.emplace_back(a, b);
    }
    return Frame(std::move(worlds), edges);
}

std::vector<Galaxy> frame_to_galaxies(const Frame& f) {
    Partition p = partition(f);
    std::size_t n = f.size();
    std::vector<std::size_t> comp(n, n);
    std::vector<Galaxy> out;
    for (std::size_t start = 0; start < n; ++start) {
        if (comp[start] != n) continue;
        std::size_t id = out.size();
        std::vector<std::size_t> stack{start};
        comp[start] = id;
        Galaxy g;
        while (!stack.empty()) {
            std::size_t w = stack.back();
            stack.pop_back();
            for (const auto* nbrs : {&f.succ(w), &f.pred(w)}) {
                for (std::size_t v : *nbrs) {
                    if (comp[v] == n) {
                        comp[v] = id;
                        stack.push_back(v);
                    }
                }
            }
            const World& name = f.world(w);
            if (p.kernel.count(name)) {
                g.lower.insert(name);
            } else {
                g.upper.insert(name);
                WorldSet img;
                for (std::size_t v : f.succ(w)) img.insert(f.world(v));
                g.rho[name] = std::move(img);
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

Frame flower(FlowerIndex idx) {
    const int m = idx.m, n = idx.n;
    if (m < 0 || n < -1 || (m == 0 && n != 0)) {
        throw InvalidIndex("no flower with index (" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
    std::vector<World> worlds;
    std::vector<std::pair<World, World>> edges;
    if (n == -1) {
        for (int i = 1; i <= m; ++i) worlds.push_back(std::to_string(i));
        for (const auto& a : worlds) {
            for (const auto& b : worlds) edges.emplace_back(a, b);
        }
        return Frame(worlds, edges);
    }
    for (int i = 0; i <= m + n; ++i) worlds.push_back(std::to_string(i));
    for (int i = 1; i <= m; ++i) edges.emplace_back("0", std::to_string(i));
    for (int i = 1; i <= m + n; ++i) {
        for (int j = 1; j <= m + n; ++j) edges.emplace_back(std::to_string(i), std::to_string(j));
    }
    return Frame(worlds, edges);
}

Galaxy flower_galaxy(FlowerIndex idx) {
    Frame f = flower(idx);
    std::vector<Galaxy> gs = frame_to_galaxies(f);
    return gs.front();
}

bool is_simple(const Galaxy& g) {
    if (g.lower.empty()) return false;
    for (const auto& s : g.upper) {
        std::size_t k = g.image(s).size();
        if (k > 1 && g.lower.size() - k > 1) return false;
    }
    return true;
}

bool is_headed(const Galaxy& g) {
    return std::any_of(g.upper.begin(), g.upper.end(), [&](const World& s) { return !g.image(s).empty(); });
}

bool in_K2(const Galaxy& g) {
    if (g.upper.size() < 4 || g.lower.size() < 4) return false;
    return std::all_of(g.upper.begin(), g.upper.end(), [&](const World& s) { return g.image(s).size() == 2; });
}

bool in_L2(const Galaxy& g) {
    if (g.upper.size() < 4 || g.lower.size() < 4) return false;
    return std::all_of(g.upper.begin(), g.upper.end(),
                       [&](const World& s) { return g.lower.size() - g.image(s).size() == 2; });
}

// ---------------------------------------------------------------------------
// Subframes, unions, renaming

Frame induced_subframe(const Frame& f, const WorldSet& keep) {
    std::vector<World> worlds(keep.begin(), keep.end());
    std::vector<std::pair<World, World>> edges;
    for (const auto& a : keep) {
        for (std::size_t j : f.succ(f.index(a))) {
            if (keep.count(f.world(j))) edges.emplace_back(a, f.world(j));
        }
    }
    return Frame(std::move(worlds), edges);
}

Frame generated_subframe(const Frame& f, const World& s) {
    std::size_t start = f.index(s);
    std::vector<char> seen(f.size(), 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    WorldSet keep;
    while (!stack.empty()) {
        std::size_t w = stack.back();
        stack.pop_back();
        keep.insert(f.world(w));
        for (std::size_t v : f.succ(w)) {
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return induced_subframe(f, keep);
}

Frame disjoint_union(const std::vector<Frame>& frames) {
    if (frames.empty()) throw MalformedInput("union of no frames");
    std::vector<World> worlds;
    std::vector<std::pair<World, World>> edges;
    std::set<World> seen;
    for (const auto& f : frames) {
        for (const auto& w : f.worlds()) {
            if (!seen.insert(w).second) throw Overlap("world shared by two frames: " + w);
            worlds.push_back(w);
        }
        auto e = f.edges();
        edges.insert(edges.end(), e.begin(), e.end());
    }
    return Frame(std::move(worlds), edges);
}

Frame rename(const Frame& f, const std::function<World(const World&)>& name) {
    std::vector<World> worlds;
    for (const auto& w : f.worlds()) worlds.push_back(name(w));
    std::vector<std::pair<World, World>> edges;
    for (const auto& [a, b] : f.edges()) edges.emplace_back(name(a), name(b));
    return Frame(std::move(worlds), edges);
}

Frame with_prefix(const Frame& f, const std::string& prefix) {
    return rename(f, [&](const World& w) { return prefix + w; });
}

Galaxy rename(const Galaxy& g, const std::function<World(const World&)>& name) {
    Galaxy out;
    for (const auto& a : g.upper) out.upper.insert(name(a));
    for (const auto& b : g.lower) out.lower.insert(name(b));
    for (const auto& [s, img] : g.rho) {
        WorldSet t;
        for (const auto& b : img) t.insert(name(b));
        out.rho[name(s)] = std::move(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical codes and enumeration

std::string canonical_code(const Frame& f) {
    const std::size_t n = f.size();
    // Worlds are only permuted within classes of equal (out-degree,
    // in-degree, loop) signature; classes are laid out in signature order.
    using Sig = std::tuple<std::size_t, std::size_t, bool>;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto sig = [&](std::size_t w) { return Sig{f.succ(w).size(), f.pred(w).size(), f.edge(w, w)}; };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sig(a) < sig(b); });
    std::vector<std::size_t> cell_start;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || sig(order[i]) != sig(order[i - 1])) cell_start.push_back(i);
    }
    cell_start.push_back(n);

    std::string header;
    for (std::size_t i = 0; i < n; ++i) {
        auto [o, in, loop] = sig(order[i]);
        header += std::to_string(o) + "." + std::to_string(in) + (loop ? "r" : "i") + ";";
    }

    std::string best;
    std::string cur(n * n, '0');
    // Iterate over the product of permutations of each cell.
    std::vector<std::size_t> perm = order;
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c + 1 == cell_start.size()) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) cur[i * n + j] = f.edge(perm[i], perm[j]) ? '1' : '0';
            }
            if (best.empty() || cur < best) best = cur;
            return;
        }
        auto first = perm.begin() + static_cast<std::ptrdiff_t>(cell_start[c]);
        auto last = perm.begin() + static_cast<std::ptrdiff_t>(cell_start[c + 1]);
        std::sort(first, last);
        do {
            rec(c + 1);
        } while (std::next_permutation(first, last));
    };
    rec(0);
    return std::to_string(n) + ":" + header + best;
}

namespace {

// A connected galaxy with nonempty lower part, up to isomorphism: the
// lower size b and the sorted bit masks rho(s) of the upper worlds,
// minimal over all permutations of the lower part.
struct GalaxyShape {
    std::size_t b;
    std::vector<unsigned> masks;
    std::size_t size() const { return b + masks.size(); }
    bool operator<(const GalaxyShape& o) const {
        if (size() != o.size()) return size() < o.size();
        if (b != o.b) return b > o.b;
        return masks < o.masks;
    }
};

std::vector<unsigned> permuted(const std::vector<unsigned>& masks, const std::vector<std::size_t>& p) {
    std::vector<unsigned> out;
    out.reserve(masks.size());
    for (unsigned m : masks) {
        unsigned r = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (m & (1u << i)) r |= 1u << p[i];
        }
        out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_canonical(const std::vector<unsigned>& masks, std::size_t b) {
    std::vector<std::size_t> p(b);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) {
        if (permuted(masks, p) < masks) return false;
    }
    return true;
}

std::vector<GalaxyShape> galaxy_shapes(std::size_t size) {
    std::vector<GalaxyShape> out;
    for (std::size_t b = size; b >= 1; --b) {
        std::size_t r = size - b;
        unsigned full = (1u << b) - 1;
        std::vector<unsigned> masks;
        std::function<void(unsigned)> rec = [&](unsigned lo) {
            if (masks.size() == r) {
                if (is_canonical(masks, b)) out.push_back({b, masks});
                return;
            }
            for (unsigned m = lo; m <= full; ++m) {
                masks.push_back(m);
                rec(m);
                masks.pop_back();
            }
        };
        rec(1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Frame build(std::size_t dust, const std::vector<const GalaxyShape*>& parts) {
    std::vector<World> worlds;
    std::vector<std::pair<World, World>> edges;
    std::size_t next = 0;
    auto fresh = [&] {
        worlds.push_back(std::to_string(next++));
        return worlds.back();
    };
    for (const GalaxyShape* g : parts) {
        std::vector<World> upper, lower;
        for (std::size_t i = 0; i < g->masks.size(); ++i) upper.push_back(fresh());
        for (std::size_t i = 0; i < g->b; ++i) lower.push_back(fresh());
        for (std::size_t i = 0; i < upper.size(); ++i) {
            for (std::size_t j = 0; j < g->b; ++j) {
                if (g->masks[i] & (1u << j)) edges.emplace_back(upper[i], lower[j]);
            }
        }
        for (const auto& a : lower) {
            for (const auto& c : lower) edges.emplace_back(a, c);
        }
    }
    for (std::size_t i = 0; i < dust; ++i) fresh();
    return Frame(std::move(worlds), edges);
}

}  // namespace

void for_each_euclidean_frame(std::size_t max_worlds, const std::function<bool(const Frame&)>& visit) {
    if (max_worlds == 0) return;
    if (max_worlds > 16) throw ResourceLimit("frame enumeration limited to 16 worlds");
    // All galaxy shapes by size, in one global order.
    std::vector<GalaxyShape> shapes;
    for (std::size_t s = 1; s <= max_worlds; ++s) {
        auto g = galaxy_shapes(s);
        shapes.insert(shapes.end(), g.begin(), g.end());
    }
    Budget budget(limits().max_frames, "frame enumeration");
    bool stop = false;
    for (std::size_t n = 1; n <= max_worlds && !stop; ++n) {
        for (std::size_t dust = n + 1; dust-- > 0 && !stop;) {
            std::vector<const GalaxyShape*> parts;
            // Multisets of shapes (non-decreasing index) with total size n - dust.
            std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
                if (stop) return;
                if (left == 0) {
                    budget.tick();
                    if (!visit(build(dust, parts))) stop = true;
                    return;
                }
                for (std::size_t i = from; i < shapes.size() && !stop; ++i) {
                    if (shapes[i].size() > left) break;
                    parts.push_back(&shapes[i]);
                    rec(i, left - shapes[i].size());
                    parts.pop_back();
                }
            };
            rec(0, n - dust);
        }
    }
}

std::vector<Frame> enumerate_euclidean_frames(std::size_t max_worlds) {
    std::vector<Frame> out;
    for_each_euclidean_frame(max_worlds, [&](const Frame& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    // '#' also appears inside generated identifiers such as "s#1"; a comment
    // starts only at the beginning of a token.
    while (h != std::string::npos && h > 0 && !std::isspace(static_cast<unsigned char>(line[h - 1]))) {
        h = line.find('#', h + 1);
    }
    return h == std::string::npos ? line : line.substr(0, h);
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string join(const std::vector<World>& ws) {
    std::string out;
    for (const auto& w : ws) out += " " + w;
    return out;
}

}  // namespace

Frame parse_frame(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<World> worlds;
    std::vector<std::pair<World, World>> edges;
    bool header = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = tokens(strip_comment(line));
        if (t.empty()) continue;
        auto bad = [&](const std::string& why) {
            return MalformedInput("line " + std::to_string(lineno) + ": " + why);
        };
        if (t[0] == "worlds") {
            if (header) throw bad("repeated worlds header");
            header = true;
            if (t.size() == 2 && all_digits(t[1])) {
                std::size_t n = std::stoul(t[1]);
                for (std::size_t i = 0; i < n; ++i) worlds.push_back(std::to_string(i));
            } else {
                worlds.insert(worlds.end(), t.begin() + 1, t.end());
            }
        } else if (t[0] == "world") {
            if (t.size() != 2) throw bad("expected: world <id>");
            header = true;
            worlds.push_back(t[1]);
        } else if (t[0] == "edge") {
            if (t.size() != 3) throw bad("expected: edge <id> <id>");
            edges.emplace_back(t[1], t[2]);
        } else {
            throw bad("unknown directive '" + t[0] + "'");
        }
    }
    if (!header || worlds.empty()) throw MalformedInput("missing worlds header");
    try {
        return Frame(std::move(worlds), edges);
    } catch (const WorldNotFound& e) {
        throw MalformedInput(std::string("edge endpoint not declared: ") + e.what());
    }
}

std::string format_frame(const Frame& f) {
    std::string out;
    bool plain = true;
    for (std::size_t i = 0; i < f.size(); ++i) plain = plain && f.world(i) == std::to_string(i);
    if (plain) out += "worlds " + std::to_string(f.size()) + "\n";
    else if (f.size() == 1 && all_digits(f.world(0))) out += "world " + f.world(0) + "\n";
    else out += "worlds" + join(f.worlds()) + "\n";
    for (const auto& [a, b] : f.edges()) out += "edge " + a + " " + b + "\n";
    return out;
}

Galaxy parse_galaxy(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Galaxy g;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = tokens(strip_comment(line));
        if (t.empty()) continue;
        auto bad = [&](const std::string& why) {
            return MalformedInput("line " + std::to_string(lineno) + ": " + why);
        };
        if (t[0] == "upper") {
            g.upper.insert(t.begin() + 1, t.end());
        } else if (t[0] == "lower") {
            g.lower.insert(t.begin() + 1, t.end());
        } else if (t[0] == "rho") {
            if (t.size() < 3 || t[2] != ":") throw bad("expected: rho <id> : <ids>");
            if (g.rho.count(t[1])) throw bad("rho given twice for " + t[1]);
            g.rho[t[1]] = WorldSet(t.begin() + 3, t.end());
        } else {
            throw bad("unknown directive '" + t[0] + "'");
        }
    }
    // Upper worlds without a rho line map to the empty set.
    for (const auto& a : g.upper) g.rho.try_emplace(a);
    g.validate();
    return g;
}

std::string format_galaxy(const Galaxy& g) {
    std::string out = "upper" + join({g.upper.begin(), g.upper.end()}) + "\n";
    out += "lower" + join({g.lower.begin(), g.lower.end()}) + "\n";
    for (const auto& [s, img] : g.rho) out += "rho " + s + " :" + join({img.begin(), img.end()}) + "\n";
    return out;
}

std::string format_set(const WorldSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& w : s) {
        if (!first) out += ",";
        out += w;
        first = false;
    }
    return out + "}";
}

}  // namespace euclid
