#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace fracwave {

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// Hash of "key=value\n" lines in key order, so the result does not depend on
// the order parameters were given in.
std::uint64_t fingerprint(const std::map<std::string, std::string>& params) noexcept;

std::string to_hex(std::uint64_t v);  // 16 lowercase hex digits

}  // namespace fracwave
