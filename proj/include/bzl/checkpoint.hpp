#pragma once

// Append-only checkpoint log: one JSON line per completed work unit,
//   {"unit": id, "fingerprint": hex, "counts": [...], "baseline": [...]}
// A truncated final line (interrupted write) is dropped on load.

#include "bzl/enumerate.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace bzl {

class CheckpointMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// FNV-1a, 64 bit, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

// Completed units keyed by id. Missing file means no progress. Throws
// CheckpointMismatch when any record carries another fingerprint, and
// std::runtime_error on records with the wrong number of thresholds.
// Trims a torn trailing line from the file so appends stay well formed.
std::map<std::uint64_t, UnitCounts> load_checkpoint(const std::filesystem::path& path, const std::string& fingerprint,
                                                    std::size_t thresholds);

class CheckpointWriter {
 public:
  CheckpointWriter(const std::filesystem::path& path, std::string fingerprint);

  // Writes one record and flushes it to the OS.
  void append(const UnitCounts& unit);

 private:
  std::ofstream out_;
  std::string fingerprint_;
};

}  // namespace bzl
