#include "fracwave/fingerprint.hpp"

#include <cstdio>

namespace fracwave {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fingerprint(const std::map<std::string, std::string>& params) noexcept {
  std::string canonical;
  for (const auto& [k, v] : params) {
    canonical += k;
    canonical += '=';
    canonical += v;
    canonical += '\n';
  }
  return fnv1a64(canonical);
}

std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace fracwave
