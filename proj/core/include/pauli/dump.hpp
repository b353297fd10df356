#pragma once

// Binary snapshot dumps.
//
// A dump is a text header of `key = value` lines, one blank line, then the
// two spinor components as little-endian float64 (re, im) pairs in flat
// grid order (x slowest), psi1 first. Header keys, in order:
//   format, kind, dim, nx, ny, nz, hx, hy, hz, ox, oy, oz, time, components

#include <filesystem>
#include <string>
#include <vector>

#include "pauli/state.hpp"

namespace pauli {

inline constexpr const char* kDumpFormat = "pauli-dump-1";

struct Snapshot {
  double time = 0.0;
  SpinorField field;
};

/// Throws IoError when the file cannot be written.
void write_dump(const std::filesystem::path& path, const SpinorField& f, double time);

/// Throws IoError naming the file and the offending field for a missing
/// file, bad header or short payload.
Snapshot read_dump(const std::filesystem::path& path);

/// "snap_000042.bin" for step 42.
std::string dump_filename(std::size_t step);

/// Dump files in `dir` named like dump_filename, sorted by name.
/// Throws IoError if the directory does not exist.
std::vector<std::filesystem::path> list_dumps(const std::filesystem::path& dir);

}  // namespace pauli
