#pragma once

#include <string>

#include "fracwave/grid.hpp"

namespace fracwave {

// Binary field dump, all little-endian:
//   "FWF1" | uint32 dim | uint32 n per axis | float64 L per axis |
//   uint8 domain (0 space, 1 frequency) | (float64 re, float64 im) per node,
//   row-major, frequency fields in centred order.
// Writes go to a temporary file that is renamed into place. Errors: IoError.
void write_field(const std::string& path, const Field& field);
Field read_field(const std::string& path);

// Writes `contents` to `path` through a temporary file and a rename, so the
// target either keeps its old contents or holds the complete new ones.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace fracwave
