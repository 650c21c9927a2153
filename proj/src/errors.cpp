#include "euclid/errors.hpp"
#include "euclid/limits.hpp"

#include <cstdlib>

namespace euclid {

namespace {

std::string describe(std::size_t offset, const std::vector<std::string>& expected, const std::string& found) {
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": found " + found;
    if (!expected.empty()) {
        msg += ", expected one of:";
        for (const auto& e : expected) msg += " " + e;
    }
    return msg;
}

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return fallback;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || parsed == 0) return fallback;
    return parsed;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error(describe(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

Limits& limits() {
    static Limits l = [] {
        Limits d;
        d.max_frames = env_or("EUCLID_MAX_FRAMES", d.max_frames);
        d.max_search_nodes = env_or("EUCLID_MAX_SEARCH", d.max_search_nodes);
        d.max_game_positions = env_or("EUCLID_MAX_POSITIONS", d.max_game_positions);
        return d;
    }();
    return l;
}

void Budget::tick(std::uint64_t n) {
    used_ += n;
    if (used_ > ceiling_) {
        throw ResourceLimit(what_ + " exceeded ceiling of " + std::to_string(ceiling_));
    }
}

}  // namespace euclid
