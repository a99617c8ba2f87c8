#pragma once

#include <filesystem>
#include <string>

#include "strichartz/grid.hpp"

namespace strichartz {

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Flat binary snapshot, little-endian:
///   8 bytes  magic "STRLABSV"
///   uint32   particle count N, uint32 spatial dimension d
///   uint64   points per axis (N*d entries)
///   double   extent per axis (N*d entries)
///   double   re, im interleaved, row-major with axis 0 slowest
void write_state_binary(const std::filesystem::path& path, const StateVector& u);
StateVector read_state_binary(const std::filesystem::path& path);

/// CSV for 1-d and 2-d grids: coordinates, re, im, |u|^2.
std::string state_csv(const StateVector& u);
void write_state_csv(const std::filesystem::path& path, const StateVector& u);

}  // namespace strichartz
