#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace euclid {

using World = std::string;

// Orders identifiers with embedded digit runs compared numerically, so that
// "2" < "10" and "s#2" < "s#10".
bool natural_less(const std::string& a, const std::string& b);

struct NaturalLess {
    bool operator()(const std::string& a, const std::string& b) const { return natural_less(a, b); }
};

using WorldSet = std::set<World, NaturalLess>;

// A finite frame (W, R). Worlds are stored in natural order; world indices
// follow that order.
class Frame {
public:
    Frame(std::vector<World> worlds, const std::vector<std::pair<World, World>>& edges);

    std::size_t size() const { return worlds_.size(); }
    const std::vector<World>& worlds() const { return worlds_; }
    const World& world(std::size_t i) const { return worlds_[i]; }
    std::size_t index(const World& w) const;  // WorldNotFound
    bool contains(const World& w) const { return index_.count(w) != 0; }

    bool edge(std::size_t i, std::size_t j) const { return adj_[i * worlds_.size() + j] != 0; }
    bool edge(const World& a, const World& b) const { return edge(index(a), index(b)); }
    const std::vector<std::size_t>& succ(std::size_t i) const { return succ_[i]; }
    const std::vector<std::size_t>& pred(std::size_t i) const { return pred_[i]; }
    std::size_t edge_count() const;

    std::vector<std::pair<World, World>> edges() const;

    friend bool operator==(const Frame& a, const Frame& b) { return a.worlds_ == b.worlds_ && a.adj_ == b.adj_; }

private:
    std::vector<World> worlds_;
    std::map<World, std::size_t> index_;
    std::vector<char> adj_;
    std::vector<std::vector<std::size_t>> succ_, pred_;
};

// Galaxy (A, B, rho): R = U {s} x rho(s) over s in A, plus B x B.
struct Galaxy {
    WorldSet upper;
    WorldSet lower;
    std::map<World, WorldSet, NaturalLess> rho;  // total on upper

    const WorldSet& image(const World& s) const;
    void validate() const;  // MalformedInput on overlap, empty carrier or bad rho
};

struct FlowerIndex {
    int m = 0;
    int n = 0;
    friend bool operator==(const FlowerIndex& a, const FlowerIndex& b) { return a.m == b.m && a.n == b.n; }
    friend bool operator<(const FlowerIndex& a, const FlowerIndex& b) {
        return a.m != b.m ? a.m < b.m : a.n < b.n;
    }
};

bool is_euclidean(const Frame& f);

struct Partition {
    WorldSet dust, root, kernel;
};

Partition partition(const Frame& f);  // NotEuclidean

Frame galaxy_to_frame(const Galaxy& g);
std::vector<Galaxy> frame_to_galaxies(const Frame& f);  // NotEuclidean; ordered by least world

Frame flower(FlowerIndex idx);  // InvalidIndex
Galaxy flower_galaxy(FlowerIndex idx);

bool is_simple(const Galaxy& g);
bool is_headed(const Galaxy& g);
bool in_K2(const Galaxy& g);
bool in_L2(const Galaxy& g);

Frame generated_subframe(const Frame& f, const World& s);  // WorldNotFound
Frame induced_subframe(const Frame& f, const WorldSet& keep);

Frame disjoint_union(const std::vector<Frame>& frames);  // Overlap
Frame rename(const Frame& f, const std::function<World(const World&)>& name);
Frame with_prefix(const Frame& f, const std::string& prefix);
Galaxy rename(const Galaxy& g, const std::function<World(const World&)>& name);

// Lexicographically least adjacency bit string over all orderings of the
// worlds, with the out-degree sequence as a leading key.
std::string canonical_code(const Frame& f);

// One representative per isomorphism class of Euclidean frames with at
// most max_worlds worlds, ordered by size then canonical code. Worlds are
// named "0".."n-1". ResourceLimit past the frame ceiling.
std::vector<Frame> enumerate_euclidean_frames(std::size_t max_worlds);

// Streaming form; the visitor returns false to stop early.
void for_each_euclidean_frame(std::size_t max_worlds, const std::function<bool(const Frame&)>& visit);

// Text formats.
Frame parse_frame(const std::string& text);      // MalformedInput
std::string format_frame(const Frame& f);
Galaxy parse_galaxy(const std::string& text);    // MalformedInput
std::string format_galaxy(const Galaxy& g);
std::string format_set(const WorldSet& s);       // "{a,b}"

}  // namespace euclid
