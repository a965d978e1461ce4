#pragma once

#include <cstdint>
#include <string>

namespace psint {

inline constexpr const char* kToolName = "psint";
inline constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a64(const void* data, std::size_t n);
// hash of the raw file bytes; throws std::runtime_error when unreadable
std::uint64_t fnv1a64_file(const std::string& path);
std::string to_hex16(std::uint64_t v);

// shortest round-trip decimal form, locale independent ('.' separator always)
std::string format_double(double v);
// fixed significant digits, locale independent
std::string format_double(double v, int precision);

}  // namespace psint
