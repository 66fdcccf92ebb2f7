#pragma once

#include <cstddef>
#include <iosfwd>
#include <string_view>

namespace kway::cli {

/// Entry point of the `kway` tool. Returns 0 on success, 2 on usage errors
/// (bad flags, unreadable trace, invalid combinations), 1 otherwise.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses "16384" or "2^14". Throws std::invalid_argument.
std::size_t parse_size(std::string_view text);

}  // namespace kway::cli
