#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mira::text {

std::vector<std::string_view> split(std::string_view s, std::string_view sep);

std::string_view trim(std::string_view s);

// Strips one trailing '\r' (CRLF files).
std::string_view chomp(std::string_view line);

// Decimal integer with no sign, padding, or trailing garbage.
std::optional<std::int64_t> parse_int(std::string_view s);

// Valid UTF-8 passes through untouched; every byte that does not start or
// continue a well-formed sequence becomes U+FFFD.
std::string sanitize_utf8(std::string_view s);

// Cuts after `max_chars` code points, never inside a multi-byte sequence.
std::string truncate_utf8(std::string_view s, std::size_t max_chars);

// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace mira::text
