#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nplay {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A GameId that does not belong to the store it was handed to.
struct invalid_handle : error {
    using error::error;
};

// A construction would exceed the store's node cap.
struct resource_error : error {
    using error::error;
};

// Operation called with a player count it does not support (e.g. N = 2).
struct unsupported_players : error {
    using error::error;
};

struct parse_error : error {
    parse_error(const std::string& what, std::size_t position)
        : error(what + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

}  // namespace nplay
