#pragma once

#include "euclid/frames.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace euclid {

using WorldMap = std::map<World, World, NaturalLess>;

// Forth and back conditions, with f total on the source.
bool is_bounded_morphism(const WorldMap& f, const Frame& source, const Frame& target);
bool is_surjective(const WorldMap& f, const Frame& target);

// Restricts the image of selected source worlds during search.
using Constraints = std::map<World, WorldSet, NaturalLess>;

// Backtracking search for a surjective bounded morphism. Complete: an empty
// result means none exists (under the given constraints).
std::optional<WorldMap> find_surjective_bm(const Frame& source, const Frame& target,
                                           const Constraints& allowed = {});

std::optional<WorldMap> are_isomorphic(const Frame& a, const Frame& b);

// q-move Ehrenfeucht-Fraisse game from the empty position.
bool ef_second_player_wins(const Frame& a, const Frame& b, std::size_t q);
bool q_equivalent(const Frame& a, const Frame& b, std::size_t q);

// Game outcome with a short account of it: when the first player wins, a
// winning opening move and, for each reply, the continuation that wins;
// when the second player wins, a winning reply to every opening move.
struct GameReport {
    bool second_player_wins = false;
    std::vector<std::string> moves;
};

GameReport ef_game_report(const Frame& a, const Frame& b, std::size_t q);

}  // namespace euclid
