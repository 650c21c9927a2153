#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace euclid {

// Ceilings on exhaustive searches. Exceeding one raises ResourceLimit.
struct Limits {
    std::uint64_t max_frames = 2'000'000;        // frames produced by enumeration
    std::uint64_t max_search_nodes = 200'000'000; // valuation / morphism search nodes
    std::uint64_t max_game_positions = 100'000'000;
};

// Process-wide limits. Initialised from EUCLID_MAX_FRAMES, EUCLID_MAX_SEARCH
// and EUCLID_MAX_POSITIONS when set.
Limits& limits();

// Counts work against a ceiling and throws once it is exceeded.
class Budget {
public:
    Budget(std::uint64_t ceiling, std::string what) : ceiling_(ceiling), what_(std::move(what)) {}
    void tick(std::uint64_t n = 1);
    std::uint64_t used() const { return used_; }

private:
    std::uint64_t ceiling_;
    std::uint64_t used_ = 0;
    std::string what_;
};

}  // namespace euclid
